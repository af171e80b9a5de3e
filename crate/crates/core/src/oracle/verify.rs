//! Oracle property suites, as run by `ghzfid oracle-verify`.

use std::fmt;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::random::{
    random_class_observable, random_density, random_element, random_pauli, random_subset_observable,
};
use super::{
    dense_spectrum, ghz_vector, lemma_check, projector_expansion_check, top_eigenspace,
    werner_expectations, ToDense, EIGEN_MAX_N,
};
use crate::bounds::fidelity_bounds;
use crate::error::{Error, Result};
use crate::observable::{spectrum, Observable};
use crate::stabilizer::{elements, GroupElement};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n: 8,
            trials: 1000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
    pub seconds: f64,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:<24} {:>7} checks {:>8.3}s",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.checked,
            self.seconds
        )?;
        for msg in self.failures.iter().take(5) {
            write!(f, "\n       {msg}")?;
        }
        if self.failures.len() > 5 {
            write!(f, "\n       ... {} more", self.failures.len() - 5)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub config: VerifyConfig,
    pub suites: Vec<SuiteOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteOutcome::passed)
    }

    pub fn into_result(self) -> Result<VerificationReport> {
        if self.passed() {
            Ok(self)
        } else {
            let failed: Vec<&str> = self
                .suites
                .iter()
                .filter(|s| !s.passed())
                .map(|s| s.name)
                .collect();
            Err(Error::OracleFailure(failed.join(", ")))
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "oracle verification: max_n = {}, trials = {}, seed = {}",
            self.config.max_n, self.config.trials, self.config.seed
        )?;
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        write!(
            f,
            "{}",
            if self.passed() {
                "all suites passed"
            } else {
                "FAILURES"
            }
        )
    }
}

struct Suite {
    name: &'static str,
    checked: usize,
    failures: Vec<String>,
    start: Instant,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            name,
            checked: 0,
            failures: Vec::new(),
            start: Instant::now(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn finish(self) -> SuiteOutcome {
        SuiteOutcome {
            name: self.name,
            checked: self.checked,
            failures: self.failures,
            seconds: self.start.elapsed().as_secs_f64(),
        }
    }
}

/// Runs every suite and collects the outcomes.
pub fn run_all(config: VerifyConfig) -> VerificationReport {
    let suites = vec![
        pauli_homomorphism(&config),
        group_elements(&config),
        group_closure(&config),
        projector_expansion(&config),
        spectrum_equivalence(&config),
        lemma_sweep(&config),
        top_eigenvector(&config),
        werner_round_trip(&config),
    ];
    VerificationReport { config, suites }
}

fn rng(config: &VerifyConfig, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(config.seed);
    r.set_stream(stream);
    r
}

/// Dense matrix of a product equals the product of dense matrices, with the
/// product built by Kronecker factors and the factors by basis action.
pub fn pauli_homomorphism(config: &VerifyConfig) -> SuiteOutcome {
    let mut suite = Suite::new("pauli_homomorphism");
    let mut rng = rng(config, 1);
    for n in 1..=config.max_n.min(6) {
        for _ in 0..config.trials.min(200) {
            let (a, b) = (random_pauli(n, &mut rng), random_pauli(n, &mut rng));
            let lhs = a.multiply(&b).expect("same n").to_dense_kron();
            let rhs = a.to_dense_unchecked().mul(&b.to_dense_unchecked());
            let err = lhs.max_abs_diff(&rhs);
            suite.check(err < 1e-12, || format!("n={n}: {a} * {b} off by {err:e}"));
            let comm = a.commutes(&b).expect("same n");
            let ba = b.multiply(&a).expect("same n");
            let ab = a.multiply(&b).expect("same n");
            suite.check(if comm { ab == ba } else { ab.negated() == ba }, || {
                format!("n={n}: commutation sign wrong for {a}, {b}")
            });
        }
    }
    suite.finish()
}

/// Each element is real, Hermitian, an involution and fixes `|Φ_n⟩`.
pub fn group_elements(config: &VerifyConfig) -> SuiteOutcome {
    let mut suite = Suite::new("group_elements");
    for n in 2..=config.max_n.min(6) {
        let ghz = ghz_vector(n).expect("n >= 2");
        for e in elements(n).expect("small n") {
            let d = e.to_dense_unchecked();
            let sq = d.mul(&d).max_abs_diff(&super::DenseOperator::identity(n));
            let fixes = d.apply(&ghz).max_abs_diff(&ghz);
            suite.check(
                d.max_imag() == 0.0 && d.hermiticity_error() == 0.0 && sq == 0.0 && fixes < 1e-14,
                || format!("n={n}: {e} fails (square err {sq:e}, ghz err {fixes:e})"),
            );
        }
    }
    suite.finish()
}

/// Exhaustive `O_p O_q = O_{p⊕q}` with sign `+1`.
pub fn group_closure(config: &VerifyConfig) -> SuiteOutcome {
    let mut suite = Suite::new("group_closure");
    for n in 1..=config.max_n.min(6) {
        for p in 0..1u64 << n {
            for q in 0..1u64 << n {
                let a = GroupElement::from_index(n, p).expect("in range");
                let b = GroupElement::from_index(n, q).expect("in range");
                let c = GroupElement::from_index(n, p ^ q).expect("in range");
                let prod = a.to_pauli().multiply(&b.to_pauli()).expect("same n");
                suite.check(prod == c.to_pauli(), || {
                    format!("n={n}: O_{p} O_{q} = {prod}")
                });
            }
        }
    }
    suite.finish()
}

pub fn projector_expansion(config: &VerifyConfig) -> SuiteOutcome {
    let mut suite = Suite::new("projector_expansion");
    for n in 2..=config.max_n.min(EIGEN_MAX_N) {
        let r = projector_expansion_check(n).expect("n within cap");
        suite.check(r < 1e-10, || format!("n={n}: residual {r:e}"));
    }
    suite.finish()
}

/// Character spectrum equals the dense spectrum as sorted multisets.
pub fn spectrum_equivalence(config: &VerifyConfig) -> SuiteOutcome {
    let mut suite = Suite::new("spectrum_equivalence");
    let mut rng = rng(config, 2);
    for n in 2..=config.max_n.min(EIGEN_MAX_N) {
        for _ in 0..config.trials {
            let obs = random_subset_observable(n, &mut rng);
            let err = spectrum_mismatch(&obs);
            suite.check(err <= 1e-9, || {
                format!("n={n}: spectra differ by {err:e} for {obs}")
            });
        }
    }
    suite.finish()
}

/// Largest gap between the sorted character and dense spectra.
pub fn spectrum_mismatch(obs: &Observable) -> f64 {
    let chars = spectrum(obs).expect("small n").values();
    let dense = dense_spectrum(obs).expect("small n");
    if chars.len() != dense.len() {
        return f64::INFINITY;
    }
    chars
        .iter()
        .zip(&dense)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

/// The covariance lemma on random three-qubit states and commuting pairs.
pub fn lemma_sweep(config: &VerifyConfig) -> SuiteOutcome {
    let mut suite = Suite::new("lemma_sweep");
    let mut rng = rng(config, 3);
    for _ in 0..config.trials {
        let rho = random_density(3, &mut rng);
        let x = random_element(3, &mut rng).to_pauli();
        let y = random_element(3, &mut rng).to_pauli();
        match lemma_check(&rho, &x, &y) {
            Ok(c) => suite.check(c.holds(), || format!("{x}, {y}: slack {:e}", c.min_slack())),
            Err(e) => suite.check(false, || format!("{x}, {y}: {e}")),
        }
    }
    suite.finish()
}

/// Observables in `C_n` have a simple top eigenvalue with eigenvector `|Φ_n⟩`.
pub fn top_eigenvector(config: &VerifyConfig) -> SuiteOutcome {
    let mut suite = Suite::new("top_eigenvector");
    let mut rng = rng(config, 4);
    for n in 2..=config.max_n.min(6) {
        for _ in 0..config.trials.min(100) {
            let obs = random_class_observable(n, &mut rng);
            let top = top_eigenspace(&obs).expect("small n");
            let m = obs.coefficient_sum();
            suite.check(
                top.is_ghz() && (top.top - m).abs() < 1e-9 * m.max(1.0),
                || format!("n={n}: {obs}: {top:?}"),
            );
        }
    }
    suite.finish()
}

/// Werner states reproduce their analytic expectations and fall inside the bounds.
pub fn werner_round_trip(config: &VerifyConfig) -> SuiteOutcome {
    let mut suite = Suite::new("werner_round_trip");
    let mut rng = rng(config, 5);
    for n in 2..=config.max_n.min(6) {
        for v in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let obs = random_class_observable(n, &mut rng);
            let w = werner_expectations(n, v, &obs).expect("valid visibility");
            let (dm, df) = w.dense.expect("n <= 8");
            suite.check(
                (dm - w.mean).abs() < 1e-9 * w.mean.abs().max(1.0)
                    && (df - w.fidelity).abs() < 1e-12,
                || {
                    format!(
                        "n={n}, V={v}: analytic ({}, {}) vs dense ({dm}, {df})",
                        w.mean, w.fidelity
                    )
                },
            );
            let spec = spectrum(&obs).expect("small n");
            let b = fidelity_bounds(&spec, w.mean).expect("in class");
            suite.check(b.contains(w.fidelity, 1e-9), || {
                format!(
                    "n={n}, V={v}: f={} outside [{}, {}]",
                    w.fidelity, b.lower, b.upper
                )
            });
        }
    }
    suite.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let report = run_all(VerifyConfig {
            max_n: 4,
            trials: 20,
            seed: 7,
        });
        assert!(report.passed(), "{report}");
        assert_eq!(report.suites.len(), 8);
        assert!(report.into_result().is_ok());
    }
}
