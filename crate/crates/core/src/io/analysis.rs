use super::report::{
    canonicalize, BoundMethod, ClassCheckReport, Report, ReportTerm, SpectrumReport,
    SpectrumSummary, UncertaintyReport, MAX_LISTED_EIGENVALUES, REPORT_SCHEMA,
    REPORT_SCHEMA_VERSION,
};
use super::request::AnalysisRequest;
use crate::bounds::{
    fidelity_bounds, lp_fidelity_range, min_variance_fidelity, propagate_uncertainty,
    witness_verdict, FidelityInterval,
};
use crate::error::Result;
use crate::observable::{
    check_class_membership, key_eigenvalues_streaming, spectrum, KeyEigenvalues, Observable,
    Spectrum, FULL_SPECTRUM_MAX_N,
};
use crate::pauli::PauliString;
use crate::stabilizer::membership;

/// Full spectrum when `n` allows it, key eigenvalues otherwise.
pub enum SpectralData {
    Full(Spectrum),
    Streaming(KeyEigenvalues),
}

impl SpectralData {
    pub fn compute(obs: &Observable) -> Result<SpectralData> {
        if obs.n() <= FULL_SPECTRUM_MAX_N {
            spectrum(obs).map(SpectralData::Full)
        } else {
            key_eigenvalues_streaming(obs).map(SpectralData::Streaming)
        }
    }

    pub fn key(&self) -> &KeyEigenvalues {
        match self {
            SpectralData::Full(s) => crate::observable::Eigenstructure::key(s),
            SpectralData::Streaming(k) => k,
        }
    }

    pub fn full(&self) -> Option<&Spectrum> {
        match self {
            SpectralData::Full(s) => Some(s),
            SpectralData::Streaming(_) => None,
        }
    }

    pub fn summary(&self) -> SpectrumSummary {
        match self {
            SpectralData::Full(s) => {
                let d = s.distinct();
                SpectrumSummary {
                    key: *self.key(),
                    method: "full".into(),
                    distinct: (d.len() <= MAX_LISTED_EIGENVALUES).then(|| d.to_vec()),
                    distinct_count: Some(d.len()),
                }
            }
            SpectralData::Streaming(k) => SpectrumSummary {
                key: *k,
                method: "streaming".into(),
                distinct: None,
                distinct_count: None,
            },
        }
    }
}

fn bounds_at(data: &SpectralData, mean: f64, in_class: bool) -> Result<FidelityInterval> {
    if in_class {
        fidelity_bounds(data.key(), mean)
    } else {
        lp_fidelity_range(data.key(), mean)
    }
}

/// Runs the whole analysis for a validated request.
pub fn run_analysis(req: &AnalysisRequest) -> Result<Report> {
    let obs = req.observable()?;
    let mean = req.mean();
    let class = check_class_membership(&obs);
    let data = SpectralData::compute(&obs)?;
    let key = *data.key();
    let mut notes = Vec::new();

    for &i in obs.dropped() {
        notes.push(format!(
            "term {i} ({}) has total coefficient 0 and was dropped",
            req.terms[i].setting
        ));
    }
    if obs.terms().len() < req.terms.len() - obs.dropped().len() {
        notes.push("repeated settings were merged into single terms".into());
    }

    let lp_range = lp_fidelity_range(&key, mean)?;
    let (method, bounds) = if class.in_class {
        (BoundMethod::Eigenvalue, fidelity_bounds(&key, mean)?)
    } else {
        notes.push(format!(
            "observable is not in C_{}: {}; reporting the exact range over all compatible states",
            req.n,
            class.reasons()
        ));
        (BoundMethod::LinearProgram, lp_range)
    };
    let witness = witness_verdict(&bounds);
    let clamp = req.options.clamp;
    let (fidelity_lower, fidelity_upper) = if clamp {
        (bounds.lower_clamped, bounds.upper_clamped)
    } else {
        (bounds.lower, bounds.upper)
    };

    let min_variance = match data.full() {
        Some(s) => Some(min_variance_fidelity(s, mean)?),
        None => {
            notes.push(format!(
                "minimum-variance estimate needs the full spectrum, available for n <= {FULL_SPECTRUM_MAX_N}"
            ));
            None
        }
    };

    let uncertainty = match propagate_uncertainty(&obs)? {
        Some(sigma) => {
            let k = req.options.sigma_k;
            let lo = (mean - k * sigma).clamp(key.min, key.max);
            let hi = (mean + k * sigma).clamp(key.min, key.max);
            let b_lo = bounds_at(&data, lo, class.in_class)?;
            let b_hi = bounds_at(&data, hi, class.in_class)?;
            let fidelity = if class.in_class {
                FidelityInterval::new(b_lo.lower, b_hi.upper)
            } else {
                // The exact range is not monotone in the mean: take the hull
                // over the endpoints and the trivial eigenvalue if enclosed.
                let b_mean = lp_fidelity_range(&key, mean)?;
                let mut l = b_lo.lower.min(b_hi.lower).min(b_mean.lower);
                let mut u = b_lo.upper.max(b_hi.upper).max(b_mean.upper);
                if lo <= key.trivial_value && key.trivial_value <= hi {
                    u = 1.0;
                }
                if lo <= key.nontrivial_max && hi >= key.nontrivial_min {
                    l = 0.0;
                }
                FidelityInterval::new(l, u)
            };
            let robust = witness_verdict(&fidelity);
            Some(UncertaintyReport {
                sigma,
                k,
                mean_low: lo,
                mean_high: hi,
                fidelity,
                witness: robust,
            })
        }
        None => None,
    };
    if let Some(u) = &uncertainty {
        if witness.gme_certified && !u.witness.gme_certified {
            notes.push(format!(
                "certification does not survive <A> - {} sigma",
                u.k
            ));
        }
    }
    if req.mean_override.is_some() {
        notes.push("<A> taken from mean_override".into());
    }

    let terms = req
        .terms
        .iter()
        .enumerate()
        .map(|(index, t)| {
            let p = PauliString::from_label(req.n, &t.setting, 1).map_err(|e| e.at_term(index))?;
            Ok(ReportTerm {
                index,
                setting: t.setting.clone(),
                group_index: membership(&p).map_err(|e| e.at_term(index))?.index(),
                coefficient: t.coefficient,
                sign: t.sign,
                expectation: t.expectation,
                sigma: t.sigma,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(canonicalize(Report {
        schema: REPORT_SCHEMA.into(),
        version: REPORT_SCHEMA_VERSION,
        n: req.n,
        description: req.description.clone(),
        terms,
        mean,
        class,
        spectrum: data.summary(),
        method,
        fidelity_lower,
        fidelity_upper,
        clamped: clamp,
        bounds,
        lp_range,
        witness,
        min_variance,
        uncertainty,
        notes,
    }))
}

pub fn run_spectrum(req: &AnalysisRequest) -> Result<SpectrumReport> {
    let obs = req.observable()?;
    let data = SpectralData::compute(&obs)?;
    Ok(canonicalize(SpectrumReport {
        schema: "ghzfid.spectrum".into(),
        version: REPORT_SCHEMA_VERSION,
        n: req.n,
        spectrum: data.summary(),
    }))
}

pub fn run_class_check(req: &AnalysisRequest) -> Result<ClassCheckReport> {
    let obs = req.observable()?;
    Ok(canonicalize(ClassCheckReport {
        schema: "ghzfid.class".into(),
        version: REPORT_SCHEMA_VERSION,
        class: check_class_membership(&obs),
    }))
}
