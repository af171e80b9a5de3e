//! Weighted sums of GHZ stabilizer elements, the `C_n` class test, and exact
//! spectra by character enumeration.
//!
//! Every stabilizer element is diagonal in the GHZ basis, and each basis state
//! is labelled by a character of the group: a choice of sign `±1` for each of
//! `n` independent generators. An observable `A = Σ α_i Q_i` therefore has
//! eigenvalue `Σ α_i χ(Q_i)` on the basis state of character `χ`. The trivial
//! character (all signs `+1`) belongs to the GHZ state itself.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::stabilizer::{canonical_generators, membership, rank_gf2, GroupElement};

/// Largest `n` for which the full eigenvalue multiset is materialized.
pub const FULL_SPECTRUM_MAX_N: usize = 20;
/// Largest `n` accepted by the streaming key-eigenvalue reduction.
pub const STREAMING_MAX_N: usize = 30;

/// Eigenvalues closer than this times `Σ|α_i|` are grouped; comfortably
/// above the rounding error of a sum of terms.
const GROUPING_RTOL: f64 = 1e-12;
const CHUNK: u64 = 1 << 14;

/// One input term before validation.
#[derive(Clone, Debug, PartialEq)]
pub struct TermInput {
    pub coefficient: f64,
    pub pauli: PauliString,
    pub sigma: Option<f64>,
}

impl TermInput {
    pub fn new(coefficient: f64, pauli: PauliString) -> Self {
        TermInput {
            coefficient,
            pauli,
            sigma: None,
        }
    }

    pub fn with_sigma(mut self, sigma: f64) -> Self {
        self.sigma = Some(sigma);
        self
    }
}

/// A validated, merged term `α Q` of an observable.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coefficient: f64,
    pub element: GroupElement,
    /// Uncertainty on `⟨Q⟩`, if known.
    pub sigma: Option<f64>,
    /// Position of the first input term that produced this one.
    pub source_index: usize,
}

/// `A = Σ α_i Q_i` with every `Q_i` in the stabilizer group.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    n: usize,
    terms: Vec<Term>,
    dropped: Vec<usize>,
}

impl Observable {
    /// Validates and merges terms. Duplicate elements have their coefficients
    /// summed; terms whose coefficient is (or sums to) zero are dropped and
    /// listed in [`Observable::dropped`].
    pub fn new(n: usize, inputs: Vec<TermInput>) -> Result<Self> {
        if inputs.is_empty() {
            return Err(Error::Empty("observable terms"));
        }
        // (coefficient, element, Σ α²σ² if every contributor had σ, first index)
        let mut merged: Vec<(f64, GroupElement, Option<f64>, usize)> = Vec::new();
        for (index, t) in inputs.into_iter().enumerate() {
            if t.pauli.n() != n {
                return Err(Error::SizeMismatch(n, t.pauli.n()).at_term(index));
            }
            if !t.coefficient.is_finite() {
                return Err(Error::NonFiniteCoefficient {
                    index,
                    value: t.coefficient,
                });
            }
            if let Some(s) = t.sigma {
                if !(s.is_finite() && s >= 0.0) {
                    return Err(Error::InvalidUncertainty { index, value: s });
                }
            }
            let element = membership(&t.pauli).map_err(|e| e.at_term(index))?;
            let var = t.sigma.map(|s| (t.coefficient * s).powi(2));
            match merged.iter_mut().find(|m| m.1 == element) {
                Some(m) => {
                    m.0 += t.coefficient;
                    m.2 = m.2.zip(var).map(|(a, b)| a + b);
                }
                None => merged.push((t.coefficient, element, var, index)),
            }
        }
        let mut terms = Vec::with_capacity(merged.len());
        let mut dropped = Vec::new();
        for (coefficient, element, var, source_index) in merged {
            if coefficient == 0.0 {
                dropped.push(source_index);
                continue;
            }
            terms.push(Term {
                coefficient,
                element,
                sigma: var.map(|v| v.sqrt() / coefficient.abs()),
                source_index,
            });
        }
        if terms.is_empty() {
            return Err(Error::Empty(
                "observable terms after dropping zero coefficients",
            ));
        }
        Ok(Observable { n, terms, dropped })
    }

    /// Shorthand for unit-sign labels, e.g. `&[("xyy", 1.0), ("yxy", 1.0)]`.
    pub fn from_labels(n: usize, terms: &[(&str, f64)]) -> Result<Self> {
        let inputs = terms
            .iter()
            .enumerate()
            .map(|(i, &(label, a))| {
                PauliString::from_label(n, label, 1)
                    .map(|p| TermInput::new(a, p))
                    .map_err(|e| e.at_term(i))
            })
            .collect::<Result<Vec<_>>>()?;
        Observable::new(n, inputs)
    }

    /// Unit-weight sum of the given group elements.
    pub fn from_elements(elements: &[GroupElement]) -> Result<Self> {
        let n = elements
            .first()
            .ok_or(Error::Empty("observable terms"))?
            .n();
        Observable::new(
            n,
            elements
                .iter()
                .map(|e| TermInput::new(1.0, e.to_pauli()))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Input positions of terms removed for having a zero coefficient.
    pub fn dropped(&self) -> &[usize] {
        &self.dropped
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.terms.iter().map(|t| t.element).collect()
    }

    /// `Σ α_i`, the eigenvalue on the GHZ state.
    pub fn coefficient_sum(&self) -> f64 {
        self.terms.iter().map(|t| t.coefficient).sum()
    }

    fn grouping_tolerance(&self) -> f64 {
        if self.terms.iter().all(|t| t.coefficient.fract() == 0.0) {
            return 0.0;
        }
        let scale: f64 = self.terms.iter().map(|t| t.coefficient.abs()).sum();
        GROUPING_RTOL * scale.max(1.0)
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}·{}", t.coefficient, t.element)?;
        }
        Ok(())
    }
}

pub fn build_observable(n: usize, terms: Vec<TermInput>) -> Result<Observable> {
    Observable::new(n, terms)
}

/// Reason an observable falls outside `C_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassFailure {
    NonPositiveCoefficient { term: usize, coefficient: f64 },
    RankDeficient { rank: usize, n: usize },
    TooFewTerms { m: usize, n: usize },
}

impl fmt::Display for ClassFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassFailure::NonPositiveCoefficient { term, coefficient } => {
                write!(f, "term {term} has non-positive coefficient {coefficient}")
            }
            ClassFailure::RankDeficient { rank, n } => {
                write!(f, "terms generate a subgroup of rank {rank} < {n}")
            }
            ClassFailure::TooFewTerms { m, n } => write!(f, "only {m} terms, at least {n} needed"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub n: usize,
    pub in_class: bool,
    pub rank: usize,
    pub m: usize,
    pub failures: Vec<ClassFailure>,
}

impl ClassReport {
    pub fn reasons(&self) -> String {
        self.failures
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    }

    pub fn require(&self) -> Result<()> {
        if self.in_class {
            Ok(())
        } else {
            Err(Error::NotInClass {
                n: self.n,
                reasons: self.reasons(),
            })
        }
    }
}

pub fn check_class_membership(obs: &Observable) -> ClassReport {
    let n = obs.n;
    let mut failures = Vec::new();
    for t in &obs.terms {
        if t.coefficient <= 0.0 {
            failures.push(ClassFailure::NonPositiveCoefficient {
                term: t.source_index,
                coefficient: t.coefficient,
            });
        }
    }
    let rank = rank_gf2(&obs.elements())
        .expect("non-empty, common n")
        .rank();
    let m = obs.terms.len();
    if m < n {
        failures.push(ClassFailure::TooFewTerms { m, n });
    }
    if rank < n {
        failures.push(ClassFailure::RankDeficient { rank, n });
    }
    ClassReport {
        n,
        in_class: failures.is_empty(),
        rank,
        m,
        failures,
    }
}

/// Generators used to extend a rank-deficient term set to a full basis.
pub fn default_completion(n: usize) -> Result<Vec<GroupElement>> {
    if n == 1 {
        Ok(vec![GroupElement::new(1, true, 0)?])
    } else {
        canonical_generators(n)
    }
}

/// Coefficients and character masks: term `i` has sign `(-1)^{|c & masks[i]|}`
/// under character `c`.
#[derive(Clone, Debug)]
struct CharacterTable {
    n: usize,
    coefficients: Vec<f64>,
    masks: Vec<u64>,
}

impl CharacterTable {
    fn new(obs: &Observable, completion: &[GroupElement]) -> Result<Self> {
        let n = obs.n;
        if n > STREAMING_MAX_N {
            return Err(Error::CapExceeded {
                what: "character enumeration",
                n,
                cap: STREAMING_MAX_N,
            });
        }
        let mut all = obs.elements();
        all.extend_from_slice(completion);
        let basis = rank_gf2(&all)?;
        if !basis.generates_group() {
            return Err(Error::Empty("completion does not span the group"));
        }
        let masks = (0..obs.terms.len())
            .map(|i| basis.decomposition_mask(i) as u64)
            .collect();
        Ok(CharacterTable {
            n,
            coefficients: obs.terms.iter().map(|t| t.coefficient).collect(),
            masks,
        })
    }

    #[inline]
    fn eigenvalue(&self, character: u64) -> f64 {
        let mut acc = 0.0;
        for (&a, &m) in self.coefficients.iter().zip(&self.masks) {
            if (character & m).count_ones() & 1 == 1 {
                acc -= a;
            } else {
                acc += a;
            }
        }
        acc
    }

    fn characters(&self) -> u64 {
        1u64 << self.n
    }

    fn all_values(&self) -> Vec<f64> {
        (0..self.characters() as usize)
            .into_par_iter()
            .with_min_len(CHUNK as usize)
            .map(|c| self.eigenvalue(c as u64))
            .collect()
    }

    /// Applies `fold` over chunks of characters in `1..2^n` and merges with `merge`.
    fn reduce_nontrivial<T, F, M>(&self, identity: T, fold: F, merge: M) -> T
    where
        T: Clone + Send + Sync,
        F: Fn(T, f64) -> T + Sync + Send,
        M: Fn(T, T) -> T + Sync + Send,
    {
        let total = self.characters();
        let chunks = total.div_ceil(CHUNK);
        (0..chunks)
            .into_par_iter()
            .map(|k| {
                let start = (k * CHUNK).max(1);
                let end = ((k + 1) * CHUNK).min(total);
                (start..end).fold(identity.clone(), |acc, c| fold(acc, self.eigenvalue(c)))
            })
            .reduce(|| identity.clone(), &merge)
    }
}

/// The spectral data the fidelity formulas need.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KeyEigenvalues {
    pub n: usize,
    /// Largest eigenvalue `M`.
    pub max: f64,
    /// Second-largest distinct eigenvalue `r_2`, absent if the spectrum is a single value.
    pub second: Option<f64>,
    /// Smallest eigenvalue `r_s`.
    pub min: f64,
    /// Eigenvalue of the trivial character, `Σ α_i`.
    pub trivial_value: f64,
    pub trivial_multiplicity: u64,
    /// Extremes over the `2^n - 1` non-trivial characters.
    pub nontrivial_max: f64,
    pub nontrivial_min: f64,
    pub in_class: bool,
    pub tolerance: f64,
}

impl KeyEigenvalues {
    /// `(M, r_2, r_s)`.
    pub fn triple(&self) -> Result<(f64, f64, f64)> {
        match self.second {
            Some(r2) => Ok((self.max, r2, self.min)),
            None => Err(Error::DegenerateSpectrum(self.max)),
        }
    }

    /// Tolerance used when comparing a mean against eigenvalues.
    pub fn mean_tolerance(&self) -> f64 {
        (1e-9 * self.max.abs().max(1.0)).max(self.tolerance)
    }

    /// Checks `min ≤ mean ≤ max` up to tolerance and returns the mean pulled
    /// into the closed range.
    pub fn feasible_mean(&self, mean: f64) -> Result<f64> {
        let tol = self.mean_tolerance();
        if !mean.is_finite() || mean < self.min - tol || mean > self.max + tol {
            return Err(Error::InfeasibleMean {
                mean,
                min: self.min,
                max: self.max,
            });
        }
        Ok(mean.clamp(self.min, self.max))
    }
}

/// Anything that can hand out [`KeyEigenvalues`].
pub trait Eigenstructure {
    fn key(&self) -> &KeyEigenvalues;
}

impl Eigenstructure for KeyEigenvalues {
    fn key(&self) -> &KeyEigenvalues {
        self
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub value: f64,
    pub multiplicity: u64,
}

/// The full eigenvalue multiset, grouped into distinct values.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    distinct: Vec<Eigenvalue>,
    trivial_index: usize,
    key: KeyEigenvalues,
}

impl Spectrum {
    /// Distinct eigenvalues, strictly descending.
    pub fn distinct(&self) -> &[Eigenvalue] {
        &self.distinct
    }

    /// Position of the trivial character's eigenvalue in [`Spectrum::distinct`].
    pub fn trivial_index(&self) -> usize {
        self.trivial_index
    }

    pub fn trivial_value(&self) -> f64 {
        self.key.trivial_value
    }

    pub fn trivial_multiplicity(&self) -> u64 {
        self.key.trivial_multiplicity
    }

    pub fn total(&self) -> u64 {
        self.distinct.iter().map(|e| e.multiplicity).sum()
    }

    pub fn tolerance(&self) -> f64 {
        self.key.tolerance
    }

    /// All eigenvalues with multiplicity, descending.
    pub fn values(&self) -> Vec<f64> {
        self.distinct
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.value, e.multiplicity as usize))
            .collect()
    }
}

impl Eigenstructure for Spectrum {
    fn key(&self) -> &KeyEigenvalues {
        &self.key
    }
}

pub fn spectrum(obs: &Observable) -> Result<Spectrum> {
    spectrum_with_completion(obs, &default_completion(obs.n)?)
}

/// Like [`spectrum`], completing rank-deficient term sets with `completion`
/// (which together with the terms must generate the group).
pub fn spectrum_with_completion(obs: &Observable, completion: &[GroupElement]) -> Result<Spectrum> {
    if obs.n > FULL_SPECTRUM_MAX_N {
        return Err(Error::CapExceeded {
            what: "full spectrum",
            n: obs.n,
            cap: FULL_SPECTRUM_MAX_N,
        });
    }
    let table = CharacterTable::new(obs, completion)?;
    let tol = obs.grouping_tolerance();
    let mut values = table.all_values();
    let trivial_value = values[0];
    let (nt_max, nt_min) = values[1..]
        .iter()
        .fold((f64::NEG_INFINITY, f64::INFINITY), |(hi, lo), &v| {
            (hi.max(v), lo.min(v))
        });
    values.sort_unstable_by(|a, b| b.total_cmp(a));

    let mut distinct: Vec<Eigenvalue> = Vec::new();
    let mut group_start = f64::NAN;
    let mut trivial_index = None;
    for v in values {
        if distinct.is_empty() || group_start - v > tol {
            distinct.push(Eigenvalue {
                value: v,
                multiplicity: 0,
            });
            group_start = v;
        }
        let last = distinct.len() - 1;
        distinct[last].multiplicity += 1;
        if v == trivial_value {
            trivial_index.get_or_insert(last);
        }
    }
    let trivial_index = trivial_index.expect("trivial value is among the values");
    let in_class = check_class_membership(obs).in_class;
    let key = KeyEigenvalues {
        n: obs.n,
        max: distinct[0].value,
        second: distinct.get(1).map(|e| e.value),
        min: distinct[distinct.len() - 1].value,
        trivial_value,
        trivial_multiplicity: distinct[trivial_index].multiplicity,
        nontrivial_max: nt_max,
        nontrivial_min: nt_min,
        in_class,
        tolerance: tol,
    };
    Ok(Spectrum {
        distinct,
        trivial_index,
        key,
    })
}

/// `(M, r_2, r_s)` of a spectrum.
pub fn key_eigenvalues<S: Eigenstructure + ?Sized>(spec: &S) -> Result<(f64, f64, f64)> {
    spec.key().triple()
}

/// Computes [`KeyEigenvalues`] without materializing the `2^n` eigenvalues.
/// Two passes over the characters: extremes first, then the second-largest
/// value and the multiplicity of the trivial eigenvalue.
pub fn key_eigenvalues_streaming(obs: &Observable) -> Result<KeyEigenvalues> {
    let table = CharacterTable::new(obs, &default_completion(obs.n)?)?;
    let tol = obs.grouping_tolerance();
    let trivial_value = table.eigenvalue(0);

    let (nt_max, nt_min) = table.reduce_nontrivial(
        (f64::NEG_INFINITY, f64::INFINITY),
        |(hi, lo), v| (hi.max(v), lo.min(v)),
        |(h1, l1), (h2, l2)| (h1.max(h2), l1.min(l2)),
    );
    let max = trivial_value.max(nt_max);
    let min = trivial_value.min(nt_min);

    let below = |v: f64| max - v > tol;
    let near_trivial = |v: f64| (v - trivial_value).abs() <= tol;
    let (second_nt, trivial_nt) = table.reduce_nontrivial(
        (f64::NEG_INFINITY, 0u64),
        |(s, k), v| {
            (
                if below(v) { s.max(v) } else { s },
                k + near_trivial(v) as u64,
            )
        },
        |(s1, k1), (s2, k2)| (s1.max(s2), k1 + k2),
    );
    let second = if below(trivial_value) {
        second_nt.max(trivial_value)
    } else {
        second_nt
    };
    Ok(KeyEigenvalues {
        n: obs.n,
        max,
        second: second.is_finite().then_some(second),
        min,
        trivial_value,
        trivial_multiplicity: 1 + trivial_nt,
        nontrivial_max: nt_max,
        nontrivial_min: nt_min,
        in_class: check_class_membership(obs).in_class,
        tolerance: tol,
    })
}
