//! Fidelity statements that follow from a single expectation value `⟨A⟩`.
//!
//! For `A` in `C_n` with largest, second-largest and smallest eigenvalues
//! `M`, `r_2`, `r_s`, every state satisfies
//!
//! ```text
//! (⟨A⟩ - r_2) / (M - r_2)  ≤  f  ≤  (⟨A⟩ - r_s) / (M - r_s)
//! ```
//!
//! because `M` is non-degenerate with eigenvector `|Φ_n⟩`. For observables
//! outside the class the exact range is the linear program solved by
//! [`lp_fidelity_range`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::observable::{Eigenstructure, Observable, Spectrum};

/// Interval of fidelities, raw and clipped to `[0, 1]`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FidelityInterval {
    pub lower: f64,
    pub upper: f64,
    pub lower_clamped: f64,
    pub upper_clamped: f64,
}

impl FidelityInterval {
    pub fn new(lower: f64, upper: f64) -> Self {
        FidelityInterval {
            lower,
            upper,
            lower_clamped: lower.clamp(0.0, 1.0),
            upper_clamped: upper.clamp(0.0, 1.0),
        }
    }

    pub fn contains(&self, f: f64, tol: f64) -> bool {
        self.lower_clamped - tol <= f && f <= self.upper_clamped + tol
    }
}

/// Both bounds for an observable in `C_n`.
pub fn fidelity_bounds<S: Eigenstructure + ?Sized>(
    spec: &S,
    mean: f64,
) -> Result<FidelityInterval> {
    let key = spec.key();
    if !key.in_class {
        return Err(Error::NotInClass {
            n: key.n,
            reasons: "bounds require a positive combination of generators".into(),
        });
    }
    let (m, r2, rs) = key.triple()?;
    key.feasible_mean(mean)?;
    Ok(FidelityInterval::new(
        (mean - r2) / (m - r2),
        (mean - rs) / (m - rs),
    ))
}

/// Verdict of the biseparability witness `W = 1/2 - P_GHZ`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessVerdict {
    /// Largest value of `Tr[Wρ]` compatible with the data, `1/2 - f_lower`.
    pub witness_value: f64,
    pub gme_certified: bool,
}

pub fn witness_verdict(interval: &FidelityInterval) -> WitnessVerdict {
    WitnessVerdict {
        witness_value: 0.5 - interval.lower_clamped,
        gme_certified: interval.lower_clamped > 0.5,
    }
}

/// One atom of a distribution over distinct eigenvalues.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportPoint {
    pub eigenvalue: f64,
    pub probability: f64,
    /// Position in [`Spectrum::distinct`].
    pub index: usize,
}

/// The minimum-variance distribution over eigenvalues reproducing a mean.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinVarianceDistribution {
    pub support: Vec<SupportPoint>,
    pub variance: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FidelityEstimate {
    Point {
        value: f64,
    },
    /// The distribution fixes only the weight of a degenerate eigenspace that
    /// contains the GHZ state, so the fidelity can be anything in `[0, upper]`.
    Interval {
        lower: f64,
        upper: f64,
    },
}

impl FidelityEstimate {
    pub fn point(&self) -> Option<f64> {
        match *self {
            FidelityEstimate::Point { value } => Some(value),
            FidelityEstimate::Interval { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinVarianceResult {
    pub distribution: MinVarianceDistribution,
    pub fidelity: FidelityEstimate,
}

pub fn min_variance_distribution(spec: &Spectrum, mean: f64) -> Result<MinVarianceDistribution> {
    let key = spec.key();
    let mean = key.feasible_mean(mean)?;
    let tol = key.mean_tolerance();
    let distinct = spec.distinct();
    if let Some(index) = distinct.iter().position(|e| (e.value - mean).abs() <= tol) {
        return Ok(MinVarianceDistribution {
            support: vec![SupportPoint {
                eigenvalue: distinct[index].value,
                probability: 1.0,
                index,
            }],
            variance: 0.0,
        });
    }
    // Descending order: the first value below the mean and its predecessor.
    let lo = distinct
        .iter()
        .position(|e| e.value < mean)
        .expect("mean inside the spectrum range");
    let hi = lo - 1;
    let (vh, vl) = (distinct[hi].value, distinct[lo].value);
    let p_hi = (mean - vl) / (vh - vl);
    Ok(MinVarianceDistribution {
        support: vec![
            SupportPoint {
                eigenvalue: vh,
                probability: p_hi,
                index: hi,
            },
            SupportPoint {
                eigenvalue: vl,
                probability: 1.0 - p_hi,
                index: lo,
            },
        ],
        variance: (vh - mean) * (mean - vl),
    })
}

/// Fidelity of the minimum-variance distribution. For observables in `C_n`
/// this is always the lower bound of [`fidelity_bounds`], clipped at zero.
pub fn min_variance_fidelity(spec: &Spectrum, mean: f64) -> Result<MinVarianceResult> {
    let distribution = min_variance_distribution(spec, mean)?;
    let q = distribution
        .support
        .iter()
        .find(|s| s.index == spec.trivial_index())
        .map(|s| s.probability);
    let fidelity = match q {
        None => FidelityEstimate::Point { value: 0.0 },
        Some(q) if spec.trivial_multiplicity() == 1 => FidelityEstimate::Point { value: q },
        Some(q) => FidelityEstimate::Interval {
            lower: 0.0,
            upper: q,
        },
    };
    Ok(MinVarianceResult {
        distribution,
        fidelity,
    })
}

/// Exact range of the GHZ-state probability over all distributions on the
/// `2^n` characters that reproduce `mean`. Valid for any stabilizer-group
/// combination.
pub fn lp_fidelity_range<S: Eigenstructure + ?Sized>(
    spec: &S,
    mean: f64,
) -> Result<FidelityInterval> {
    let key = spec.key();
    let mean = key.feasible_mean(mean)?;
    let tol = key.mean_tolerance();
    let star = key.trivial_value;
    let (lo, hi) = (key.nontrivial_min, key.nontrivial_max);

    // Maximum: two-point support {trivial, extreme non-trivial} on the far side.
    let max = if (mean - star).abs() <= tol {
        1.0
    } else if mean > star {
        (hi - mean) / (hi - star)
    } else {
        (mean - lo) / (star - lo)
    };
    // Minimum: zero whenever the non-trivial characters alone reach the mean.
    let min = if mean >= lo - tol && mean <= hi + tol {
        0.0
    } else if mean > hi {
        (mean - hi) / (star - hi)
    } else {
        (lo - mean) / (lo - star)
    };
    Ok(FidelityInterval::new(
        min.clamp(0.0, 1.0),
        max.clamp(0.0, 1.0),
    ))
}

/// `σ_⟨A⟩ = sqrt(Σ α_i² σ_i²)`, assuming independent per-term errors. `None`
/// when no term carries an uncertainty.
pub fn propagate_uncertainty(obs: &Observable) -> Result<Option<f64>> {
    let given = obs.terms().iter().filter(|t| t.sigma.is_some()).count();
    if given == 0 {
        return Ok(None);
    }
    if given != obs.terms().len() {
        return Err(Error::PartialUncertainty {
            given,
            total: obs.terms().len(),
        });
    }
    let var: f64 = obs
        .terms()
        .iter()
        .map(|t| (t.coefficient * t.sigma.unwrap_or(0.0)).powi(2))
        .sum();
    Ok(Some(var.sqrt()))
}
