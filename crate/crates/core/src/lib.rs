//! Fidelity to the `n`-party GHZ state from a single stabilizer observable.
//!
//! Given `⟨A⟩` for `A = Σ α_i Q_i` built from elements `Q_i` of the GHZ
//! stabilizer group, this crate computes
//!
//! - the exact spectrum of `A` by enumerating group characters,
//! - whether `A` is a positive combination of generators (the class `C_n`),
//! - the resulting bounds on the fidelity `f = ⟨Φ_n|ρ|Φ_n⟩`,
//! - the biseparability witness verdict (`f > 1/2`),
//! - the fidelity of the minimum-variance eigenvalue distribution,
//! - the exact fidelity range for observables outside `C_n`.
//!
//! The [`oracle`] module rebuilds all of it with dense matrices for small `n`.
//!
//! ```
//! use ghz_fidelity::{observable::Observable, bounds};
//!
//! let a = Observable::from_labels(3, &[("xyy", 1.0), ("yxy", 1.0), ("yyx", 1.0), ("xxx", 1.0)])?;
//! let spec = ghz_fidelity::observable::spectrum(&a)?;
//! let f = bounds::fidelity_bounds(&spec, 2.84)?;
//! assert!((f.lower - 0.71).abs() < 1e-12);
//! assert!(bounds::witness_verdict(&f).gme_certified);
//! # Ok::<(), ghz_fidelity::Error>(())
//! ```

pub mod bounds;
pub mod error;
pub mod io;
pub mod observable;
pub mod oracle;
pub mod pauli;
pub mod stabilizer;

pub use error::{Error, Result};
pub use observable::{Observable, Spectrum};
pub use pauli::PauliString;
pub use stabilizer::GroupElement;
