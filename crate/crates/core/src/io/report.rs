//! Output documents and their text rendering.
//!
//! Every floating-point field is rounded to 12 significant digits when a
//! report is built, so that the JSON form round-trips exactly and repeated
//! runs print byte-identical output.

use std::fmt::Write as _;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bounds::{FidelityEstimate, FidelityInterval, MinVarianceResult, WitnessVerdict};
use crate::error::{Error, Result};
use crate::observable::{ClassReport, Eigenvalue, KeyEigenvalues};

pub const REPORT_SCHEMA: &str = "ghzfid.report";
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Significant digits kept in reports.
pub const REPORT_DIGITS: usize = 12;

/// Distinct-eigenvalue lists longer than this are left out of reports.
pub const MAX_LISTED_EIGENVALUES: usize = 256;

/// Rounds to [`REPORT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{:.*e}", REPORT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(num) if num.is_f64() => {
            let r = round_sig(num.as_f64().expect("f64 number"));
            *v = serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Rebuilds `x` with every float rounded by [`round_sig`].
pub fn canonicalize<T: Serialize + DeserializeOwned>(x: T) -> T {
    let mut v = serde_json::to_value(&x).expect("report types serialize");
    round_value(&mut v);
    serde_json::from_value(v).expect("rounded report deserializes")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportTerm {
    /// Position in the input `terms` array.
    pub index: usize,
    pub setting: String,
    /// Group index `p` of `O_p`.
    pub group_index: u64,
    pub coefficient: f64,
    pub sign: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expectation: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    #[serde(flatten)]
    pub key: KeyEigenvalues,
    /// `full` or `streaming`.
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distinct: Option<Vec<Eigenvalue>>,
    /// Number of distinct eigenvalues, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distinct_count: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    /// Closed-form bounds from `M`, `r_2`, `r_s` (observable in `C_n`).
    Eigenvalue,
    /// Exact range over distributions on the characters.
    LinearProgram,
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyReport {
    /// `σ_⟨A⟩`.
    pub sigma: f64,
    pub k: f64,
    /// `⟨A⟩ - kσ` and `⟨A⟩ + kσ`, clipped to the spectrum range.
    pub mean_low: f64,
    pub mean_high: f64,
    /// Fidelity interval valid for every mean in `[mean_low, mean_high]`.
    pub fidelity: FidelityInterval,
    /// Witness verdict at `mean_low`.
    pub witness: WitnessVerdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub version: u32,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub terms: Vec<ReportTerm>,
    pub mean: f64,
    pub class: ClassReport,
    pub spectrum: SpectrumSummary,
    pub method: BoundMethod,
    /// Headline fidelity bounds, clipped to `[0, 1]` unless clamping was disabled.
    pub fidelity_lower: f64,
    pub fidelity_upper: f64,
    pub clamped: bool,
    pub bounds: FidelityInterval,
    pub lp_range: FidelityInterval,
    pub witness: WitnessVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_variance: Option<MinVarianceResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uncertainty: Option<UncertaintyReport>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Report> {
        serde_json::from_str(s).map_err(|e| Error::Schema {
            path: "$".into(),
            message: e.to_string(),
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(w, "GHZ fidelity analysis, n = {}", self.n);
        if let Some(d) = &self.description {
            let _ = writeln!(w, "description: {d}");
        }
        let _ = writeln!(w);
        let _ = writeln!(w, "terms:");
        let _ = writeln!(
            w,
            "  {:>3}  {:<width$}  {:>12}  {:>4}  {:>12}  {:>10}",
            "#",
            "setting",
            "coefficient",
            "sign",
            "expectation",
            "sigma",
            width = self.n.max(7)
        );
        for t in &self.terms {
            let _ = writeln!(
                w,
                "  {:>3}  {:<width$}  {:>12}  {:>4}  {:>12}  {:>10}",
                t.index,
                t.setting,
                t.coefficient,
                if t.sign < 0 { "-1" } else { "+1" },
                t.expectation.map_or("-".into(), |e| e.to_string()),
                t.sigma.map_or("-".into(), |s| s.to_string()),
                width = self.n.max(7)
            );
        }
        let _ = writeln!(w, "  <A> = {}", self.mean);
        let _ = writeln!(w);
        let _ = writeln!(w, "{}", render_class(&self.class).trim_end());
        let _ = writeln!(w);
        let _ = writeln!(w, "{}", render_spectrum(&self.spectrum).trim_end());
        let _ = writeln!(w);

        let key = &self.spectrum.key;
        match self.method {
            BoundMethod::Eigenvalue => {
                let r2 = key.second.unwrap_or(key.max);
                let _ = writeln!(
                    w,
                    "fidelity bounds (M = {}, r_2 = {}, r_s = {}):",
                    key.max, r2, key.min
                );
                let _ = writeln!(
                    w,
                    "  lower = (<A> - r_2)/(M - r_2) = ({} {})/({} {}) = {}",
                    self.mean,
                    minus(r2),
                    key.max,
                    minus(r2),
                    self.bounds.lower
                );
                let _ = writeln!(
                    w,
                    "  upper = (<A> - r_s)/(M - r_s) = ({} {})/({} {}) = {}",
                    self.mean,
                    minus(key.min),
                    key.max,
                    minus(key.min),
                    self.bounds.upper
                );
            }
            BoundMethod::LinearProgram => {
                let _ = writeln!(
                    w,
                    "fidelity range over all states with this <A> (trivial eigenvalue {}, others in [{}, {}]):",
                    key.trivial_value, key.nontrivial_min, key.nontrivial_max
                );
            }
        }
        let _ = writeln!(
            w,
            "  {} <= f <= {}{}",
            self.fidelity_lower,
            self.fidelity_upper,
            if self.clamped { "" } else { "  (unclamped)" }
        );
        if self.method == BoundMethod::Eigenvalue {
            let _ = writeln!(
                w,
                "  exact range: [{}, {}]",
                self.lp_range.lower, self.lp_range.upper
            );
        }
        let _ = writeln!(w);
        let _ = writeln!(
            w,
            "witness: max Tr[W rho] = {}, {}",
            self.witness.witness_value,
            if self.witness.gme_certified {
                "genuine multipartite entanglement certified (f > 1/2)"
            } else {
                "not certified"
            }
        );
        if let Some(u) = &self.uncertainty {
            let _ = writeln!(w);
            let _ = writeln!(w, "uncertainty: sigma(<A>) = {}, k = {}", u.sigma, u.k);
            let _ = writeln!(w, "  <A> in [{}, {}]", u.mean_low, u.mean_high);
            let _ = writeln!(
                w,
                "  {} <= f <= {}",
                u.fidelity.lower_clamped, u.fidelity.upper_clamped
            );
            let _ = writeln!(
                w,
                "  witness at <A> - k sigma: {}",
                if u.witness.gme_certified {
                    "certified"
                } else {
                    "not certified"
                }
            );
        }
        if let Some(mv) = &self.min_variance {
            let _ = writeln!(w);
            let support: Vec<String> = mv
                .distribution
                .support
                .iter()
                .map(|s| format!("{} (p = {})", s.eigenvalue, s.probability))
                .collect();
            let _ = writeln!(w, "minimum-variance distribution: {}", support.join(", "));
            let _ = writeln!(w, "  variance = {}", mv.distribution.variance);
            match mv.fidelity {
                FidelityEstimate::Point { value } => {
                    let _ = writeln!(w, "  fidelity = {value}");
                }
                FidelityEstimate::Interval { lower, upper } => {
                    let _ = writeln!(
                        w,
                        "  fidelity in [{lower}, {upper}] (degenerate eigenspace)"
                    );
                }
            }
        }
        if !self.notes.is_empty() {
            let _ = writeln!(w);
            let _ = writeln!(w, "notes:");
            for n in &self.notes {
                let _ = writeln!(w, "  - {n}");
            }
        }
        out
    }
}

/// `- x` for non-negative `x`, `+ |x|` otherwise.
fn minus(x: f64) -> String {
    if x < 0.0 {
        format!("+ {}", -x)
    } else {
        format!("- {x}")
    }
}

pub fn render_class(c: &ClassReport) -> String {
    let mut out = format!(
        "class C_{}: {} (rank {}, {} terms)\n",
        c.n,
        if c.in_class { "yes" } else { "no" },
        c.rank,
        c.m
    );
    for f in &c.failures {
        let _ = writeln!(out, "  - {f}");
    }
    out
}

pub fn render_spectrum(s: &SpectrumSummary) -> String {
    let k = &s.key;
    let mut out = String::new();
    let _ = writeln!(out, "spectrum ({}):", s.method);
    let _ = writeln!(
        out,
        "  M = {}, r_2 = {}, r_s = {}",
        k.max,
        k.second.map_or("-".into(), |v| v.to_string()),
        k.min
    );
    let _ = writeln!(
        out,
        "  trivial eigenvalue {} (multiplicity {})",
        k.trivial_value, k.trivial_multiplicity
    );
    match (&s.distinct, s.distinct_count) {
        (Some(d), _) => {
            let parts: Vec<String> = d
                .iter()
                .map(|e| format!("{} x{}", e.value, e.multiplicity))
                .collect();
            let _ = writeln!(out, "  eigenvalues: {}", parts.join(", "));
        }
        (None, Some(c)) => {
            let _ = writeln!(out, "  {c} distinct eigenvalues (not listed)");
        }
        (None, None) => {}
    }
    out
}

/// Result of `ghzfid spectrum`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub schema: String,
    pub version: u32,
    pub n: usize,
    pub spectrum: SpectrumSummary,
}

impl SpectrumReport {
    pub fn render_text(&self) -> String {
        render_spectrum(&self.spectrum)
    }
}

/// Result of `ghzfid check-class`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassCheckReport {
    pub schema: String,
    pub version: u32,
    #[serde(flatten)]
    pub class: ClassReport,
}

impl ClassCheckReport {
    pub fn render_text(&self) -> String {
        render_class(&self.class)
    }
}
