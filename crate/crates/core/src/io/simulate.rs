//! Synthetic data from the noisy GHZ state `V·|Φ_n⟩⟨Φ_n| + (1 - V)·I/2^n`.

use rand::Rng;
use rand_distr::{Binomial, Distribution};

use super::datasets::canonical_labels;
use super::report::round_sig;
use super::request::{AnalysisOptions, AnalysisRequest, MeasuredTerm, INPUT_SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::stabilizer::membership;

/// Named observables accepted by `simulate --observable`.
pub const PRESETS: &[&str] = &[
    "pan2000",
    "four-setting",
    "case1",
    "case2",
    "case3",
    "canonical",
];

/// `(setting, coefficient)` pairs of a preset.
pub fn preset_terms(name: &str, n: usize) -> Result<Vec<(String, f64)>> {
    let three = |labels: &[&str]| -> Result<Vec<(String, f64)>> {
        if n != 3 {
            return Err(Error::Schema {
                path: "n".into(),
                message: format!("preset {name:?} is defined for n = 3 only"),
            });
        }
        Ok(labels.iter().map(|l| (l.to_string(), 1.0)).collect())
    };
    match name {
        "pan2000" | "four-setting" => three(&["xyy", "yxy", "yyx", "xxx"]),
        "case1" => three(&["xyy", "yxy"]),
        "case2" => three(&["xyy", "yxy", "zzI"]),
        "case3" => three(&["xyy", "yxy", "yyx"]),
        "canonical" => Ok(canonical_labels(n)?.into_iter().map(|l| (l, 1.0)).collect()),
        _ => Err(Error::Schema {
            path: "observable".into(),
            message: format!(
                "unknown preset {name:?}; expected one of {}",
                PRESETS.join(", ")
            ),
        }),
    }
}

/// Fidelity of the noisy state, `V + (1 - V)/2^n`.
pub fn noisy_ghz_fidelity(n: usize, visibility: f64) -> f64 {
    visibility + (1.0 - visibility) / 2f64.powi(n as i32)
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SimulationConfig {
    pub n: usize,
    pub visibility: f64,
    /// Shots per setting; `None` gives exact expectations.
    pub shots: Option<u64>,
}

/// Builds an input document with simulated expectations for `terms`.
///
/// Every non-identity group element has expectation `V` in the noisy state.
/// With `shots = N` each correlation is estimated from `N` outcomes `±1`, and
/// `sigma = sqrt((1 - ê²)/N)`.
pub fn simulate<R: Rng + ?Sized>(
    config: &SimulationConfig,
    terms: &[(String, f64)],
    rng: &mut R,
) -> Result<AnalysisRequest> {
    let SimulationConfig {
        n,
        visibility,
        shots,
    } = *config;
    if !(0.0..=1.0).contains(&visibility) {
        return Err(Error::Visibility(visibility));
    }
    if shots == Some(0) {
        return Err(Error::Schema {
            path: "shots".into(),
            message: "must be positive".into(),
        });
    }
    let mut out = Vec::with_capacity(terms.len());
    for (i, (setting, coefficient)) in terms.iter().enumerate() {
        let p = PauliString::from_label(n, setting, 1).map_err(|e| e.at_term(i))?;
        let e = membership(&p).map_err(|e| e.at_term(i))?;
        let exact = if e.is_identity() { 1.0 } else { visibility };
        let (expectation, sigma) = match shots {
            None => (exact, None),
            Some(shots) => {
                let p_plus = ((1.0 + exact) / 2.0).clamp(0.0, 1.0);
                let k = Binomial::new(shots, p_plus)
                    .expect("probability in [0, 1]")
                    .sample(rng);
                let est = 2.0 * k as f64 / shots as f64 - 1.0;
                (
                    est,
                    Some(round_sig(((1.0 - est * est) / shots as f64).sqrt())),
                )
            }
        };
        out.push(MeasuredTerm {
            setting: setting.clone(),
            coefficient: *coefficient,
            sign: 1,
            expectation: Some(expectation),
            sigma,
        });
    }
    Ok(AnalysisRequest {
        version: INPUT_SCHEMA_VERSION,
        n,
        description: Some(format!(
            "simulated noisy GHZ state, V = {visibility}, fidelity {}{}",
            round_sig(noisy_ghz_fidelity(n, visibility)),
            shots.map_or(String::new(), |s| format!(", {s} shots per setting"))
        )),
        terms: out,
        mean_override: None,
        options: AnalysisOptions::default(),
    })
}
