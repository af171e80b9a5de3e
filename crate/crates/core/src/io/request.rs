//! Input documents.
//!
//! ```json
//! {
//!   "version": 1,
//!   "n": 3,
//!   "description": "optional free text",
//!   "terms": [
//!     { "setting": "xyy", "coefficient": 1.0, "sign": 1, "expectation": 0.70, "sigma": 0.02 }
//!   ],
//!   "mean_override": null,
//!   "options": { "format": "text", "clamp": true, "sigma_k": 1.0 }
//! }
//! ```
//!
//! Field by field:
//!
//! - `version`: schema version, currently `1`. Optional.
//! - `n`: number of parties.
//! - `terms[].setting`: label over `I x y z`, site 1 first. `y` means `iσ_y`.
//! - `terms[].coefficient`: weight `α_i`, default `1.0`.
//! - `terms[].sign`: `+1` (default) or `-1`. The measured `expectation` refers
//!   to `sign × O(setting)`, so `⟨O⟩ = sign × expectation`. Use `-1` for a
//!   correlation taken with plain `σ_y` at an odd number of sites.
//! - `terms[].expectation`: measured correlation in `[-1, 1]`. Required unless
//!   `mean_override` is given.
//! - `terms[].sigma`: standard error of `expectation`; give it for all terms or none.
//! - `mean_override`: use this `⟨A⟩` instead of `Σ α_i ⟨O_i⟩`.
//! - `options.format`: `text` or `json`; `options.clamp`: whether the
//!   headline bounds are clipped to `[0, 1]`; `options.sigma_k`: width
//!   multiplier for the `⟨A⟩ ± kσ` intervals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::observable::{Observable, TermInput};
use crate::pauli::PauliString;
use crate::stabilizer::membership;

pub const INPUT_SCHEMA_VERSION: u32 = 1;

/// Expectation values may overshoot `[-1, 1]` by this much from rounding.
const EXPECTATION_SLACK: f64 = 1e-12;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

fn default_true() -> bool {
    true
}

fn default_sigma_k() -> f64 {
    1.0
}

fn default_coefficient() -> f64 {
    1.0
}

fn default_sign() -> i32 {
    1
}

fn default_version() -> u32 {
    INPUT_SCHEMA_VERSION
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisOptions {
    #[serde(default)]
    pub format: Format,
    #[serde(default = "default_true")]
    pub clamp: bool,
    #[serde(default = "default_sigma_k")]
    pub sigma_k: f64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            format: Format::Text,
            clamp: true,
            sigma_k: 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasuredTerm {
    pub setting: String,
    #[serde(default = "default_coefficient")]
    pub coefficient: f64,
    #[serde(default = "default_sign")]
    pub sign: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expectation: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
}

impl MeasuredTerm {
    pub fn new(setting: impl Into<String>, expectation: f64) -> Self {
        MeasuredTerm {
            setting: setting.into(),
            coefficient: 1.0,
            sign: 1,
            expectation: Some(expectation),
            sigma: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisRequest {
    #[serde(default = "default_version")]
    pub version: u32,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub terms: Vec<MeasuredTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean_override: Option<f64>,
    #[serde(default)]
    pub options: AnalysisOptions,
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

impl AnalysisRequest {
    /// Checks every field constraint, reporting the first violation by path.
    pub fn validate(&self) -> Result<()> {
        self.check(true)
    }

    fn check(&self, require_expectations: bool) -> Result<()> {
        if self.version != INPUT_SCHEMA_VERSION {
            return Err(schema(
                "version",
                format!(
                    "unsupported version {}, expected {INPUT_SCHEMA_VERSION}",
                    self.version
                ),
            ));
        }
        if self.n == 0 || self.n > crate::pauli::MAX_SITES {
            return Err(schema("n", format!("must be in 1..=64, got {}", self.n)));
        }
        if self.terms.is_empty() {
            return Err(schema("terms", "at least one term is required"));
        }
        if !(self.options.sigma_k.is_finite() && self.options.sigma_k >= 0.0) {
            return Err(schema("options.sigma_k", "must be a non-negative number"));
        }
        if let Some(m) = self.mean_override {
            if !m.is_finite() {
                return Err(schema("mean_override", "must be finite"));
            }
        }
        let with_sigma = self.terms.iter().filter(|t| t.sigma.is_some()).count();
        for (i, t) in self.terms.iter().enumerate() {
            let at = |field: &str| format!("terms[{i}].{field}");
            let pauli = PauliString::from_label(self.n, &t.setting, 1)
                .map_err(|e| schema(at("setting"), e.to_string()))?;
            membership(&pauli).map_err(|e| schema(at("setting"), e.to_string()))?;
            if t.sign != 1 && t.sign != -1 {
                return Err(schema(
                    at("sign"),
                    format!("must be 1 or -1, got {}", t.sign),
                ));
            }
            if !t.coefficient.is_finite() {
                return Err(schema(at("coefficient"), "must be finite"));
            }
            match t.expectation {
                Some(e) if e.is_nan() || e.abs() > 1.0 + EXPECTATION_SLACK => {
                    return Err(schema(at("expectation"), format!("{e} is outside [-1, 1]")));
                }
                None if require_expectations && self.mean_override.is_none() => {
                    return Err(schema(
                        at("expectation"),
                        "required unless mean_override is given",
                    ));
                }
                _ => {}
            }
            if let Some(s) = t.sigma {
                if !(s.is_finite() && s >= 0.0) {
                    return Err(schema(
                        at("sigma"),
                        format!("{s} is not a valid uncertainty"),
                    ));
                }
            } else if with_sigma > 0 {
                return Err(schema(
                    at("sigma"),
                    "sigma must be given for all terms or none",
                ));
            }
        }
        Ok(())
    }

    /// The observable `Σ α_i O_i` described by the terms.
    pub fn observable(&self) -> Result<Observable> {
        let inputs = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let pauli =
                    PauliString::from_label(self.n, &t.setting, 1).map_err(|e| e.at_term(i))?;
                Ok(TermInput {
                    coefficient: t.coefficient,
                    pauli,
                    sigma: t.sigma,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Observable::new(self.n, inputs)
    }

    /// `⟨A⟩`: the override if present, else `Σ α_i · sign_i · expectation_i`.
    pub fn mean(&self) -> f64 {
        if let Some(m) = self.mean_override {
            return m;
        }
        self.terms
            .iter()
            .map(|t| t.coefficient * t.sign as f64 * t.expectation.unwrap_or(0.0))
            .sum()
    }
}

fn deserialize(document: &str) -> Result<AnalysisRequest> {
    let de = &mut serde_json::Deserializer::from_str(document);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        schema(
            if path == "." { "$".to_string() } else { path },
            e.into_inner().to_string(),
        )
    })
}

/// Parses and validates an input document for analysis.
pub fn parse_input(document: &str) -> Result<AnalysisRequest> {
    let req = deserialize(document)?;
    req.check(true)?;
    Ok(req)
}

/// Like [`parse_input`] but expectations may be absent, for commands that
/// only look at the observable.
pub fn parse_observable_input(document: &str) -> Result<AnalysisRequest> {
    let req = deserialize(document)?;
    req.check(false)?;
    Ok(req)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(terms: &str) -> String {
        format!(r#"{{"n": 3, "terms": [{terms}]}}"#)
    }

    fn path_of(e: Error) -> String {
        match e {
            Error::Schema { path, .. } => path,
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn defaults_and_mean() {
        let r = parse_input(&doc(
            r#"{"setting": "xyy", "expectation": 0.70}, {"setting": "yxy", "expectation": 0.70},
               {"setting": "yyx", "expectation": 0.70}, {"setting": "xxx", "expectation": 0.74}"#,
        ))
        .unwrap();
        assert_eq!(r.options, AnalysisOptions::default());
        assert_eq!(r.terms[0].coefficient, 1.0);
        assert_eq!(r.terms[0].sign, 1);
        assert!((r.mean() - 2.84).abs() < 1e-12);
    }

    #[test]
    fn sign_flips_expectation() {
        let r = parse_input(&doc(
            r#"{"setting": "xyy", "sign": -1, "expectation": -0.5, "coefficient": 2}"#,
        ))
        .unwrap();
        assert_eq!(r.mean(), 1.0);
    }

    #[test]
    fn single_term_is_valid() {
        let r = parse_input(&doc(r#"{"setting": "xxx", "expectation": 1.0}"#)).unwrap();
        assert_eq!(r.observable().unwrap().terms().len(), 1);
    }

    #[test]
    fn validation_paths() {
        let e = parse_input(&doc(r#"{"setting": "xxx", "expectation": 1.5}"#)).unwrap_err();
        assert_eq!(path_of(e), "terms[0].expectation");
        let e = parse_input(&doc(
            r#"{"setting": "xxx", "expectation": 1}, {"setting": "xxI", "expectation": 1}"#,
        ))
        .unwrap_err();
        assert_eq!(path_of(e), "terms[1].setting");
        let e = parse_input(&doc(r#"{"setting": "xx", "expectation": 1}"#)).unwrap_err();
        assert_eq!(path_of(e), "terms[0].setting");
        let e = parse_input(&doc(r#"{"setting": "xxx"}"#)).unwrap_err();
        assert_eq!(path_of(e), "terms[0].expectation");
        let e = parse_input(&doc(r#"{"setting": "xxx", "expectation": "high"}"#)).unwrap_err();
        assert_eq!(path_of(e), "terms[0].expectation");
        let e =
            parse_input(&doc(r#"{"setting": "xxx", "expectation": 1, "bogus": 1}"#)).unwrap_err();
        assert_eq!(path_of(e), "terms[0].bogus");
        let e = parse_input(&doc(
            r#"{"setting": "xxx", "expectation": 1, "sigma": 0.1}, {"setting": "zzI", "expectation": 1}"#,
        ))
        .unwrap_err();
        assert_eq!(path_of(e), "terms[1].sigma");
        let e =
            parse_input(&doc(r#"{"setting": "xxx", "expectation": 1, "sign": 2}"#)).unwrap_err();
        assert_eq!(path_of(e), "terms[0].sign");
        assert_eq!(
            path_of(parse_input(r#"{"n": 3, "terms": []}"#).unwrap_err()),
            "terms"
        );
        assert_eq!(path_of(parse_input("not json").unwrap_err()), "$");
        assert!(parse_input(
            r#"{"version": 2, "n": 3, "terms": [{"setting": "xxx", "expectation": 1}]}"#
        )
        .is_err());
    }

    #[test]
    fn mean_override_allows_missing_expectations() {
        let r = parse_input(
            r#"{"n": 3, "terms": [{"setting": "xyy"}, {"setting": "yxy"}], "mean_override": 1.0}"#,
        )
        .unwrap();
        assert_eq!(r.mean(), 1.0);
    }

    #[test]
    fn observable_only_documents() {
        let d = r#"{"n": 3, "terms": [{"setting": "xyy"}, {"setting": "yxy", "coefficient": 2}]}"#;
        assert!(parse_input(d).is_err());
        let r = parse_observable_input(d).unwrap();
        assert_eq!(r.observable().unwrap().coefficient_sum(), 3.0);
    }
}
