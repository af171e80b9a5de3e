use minilp::{ComparisonOp, OptimizationDirection, Problem};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ghz_fidelity::bounds::{
    fidelity_bounds, lp_fidelity_range, min_variance_distribution, witness_verdict,
    FidelityInterval,
};
use ghz_fidelity::observable::{
    key_eigenvalues_streaming, spectrum, spectrum_with_completion, Eigenstructure, Observable,
    Spectrum, TermInput,
};
use ghz_fidelity::oracle::random::{
    random_class_observable, random_density, random_pauli, random_subset_observable,
};
use ghz_fidelity::oracle::{ghz_vector, DenseOperator, ToDense};
use ghz_fidelity::stabilizer::{elements, membership, GroupElement};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn same_spectrum(a: &Spectrum, b: &Spectrum, tol: f64) -> bool {
    let (va, vb) = (a.values(), b.values());
    va.len() == vb.len() && va.iter().zip(&vb).all(|(x, y)| (x - y).abs() <= tol)
}

fn scale(o: &Observable) -> f64 {
    o.terms()
        .iter()
        .map(|t| t.coefficient.abs())
        .sum::<f64>()
        .max(1.0)
}

fn rebuild(o: &Observable, terms: Vec<(f64, GroupElement)>) -> Observable {
    Observable::new(
        o.n(),
        terms
            .into_iter()
            .map(|(a, e)| TermInput::new(a, e.to_pauli()))
            .collect(),
    )
    .unwrap()
}

/// Exact GHZ-probability range by a generic LP over eigenvalue classes.
fn lp_oracle(s: &Spectrum, mean: f64) -> (f64, f64) {
    let solve = |dir| {
        let mut p = Problem::new(dir);
        let star = p.add_var(1.0, (0.0, 1.0));
        let mut norm = vec![(star, 1.0)];
        let mut first = vec![(star, s.trivial_value())];
        for (k, e) in s.distinct().iter().enumerate() {
            let count = e.multiplicity - (k == s.trivial_index()) as u64;
            if count > 0 {
                let w = p.add_var(0.0, (0.0, 1.0));
                norm.push((w, 1.0));
                first.push((w, e.value));
            }
        }
        p.add_constraint(norm, ComparisonOp::Eq, 1.0);
        p.add_constraint(first, ComparisonOp::Eq, mean);
        p.solve().unwrap().objective()
    };
    (
        solve(OptimizationDirection::Minimize),
        solve(OptimizationDirection::Maximize),
    )
}

fn plus(a: &DenseOperator, b: &DenseOperator) -> DenseOperator {
    DenseOperator::from_matrix(a.n(), a.matrix() + b.matrix()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pauli_product_is_associative(seed: u64, n in 1usize..=6) {
        let mut r = rng(seed);
        let (a, b, c) = (random_pauli(n, &mut r), random_pauli(n, &mut r), random_pauli(n, &mut r));
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn pauli_product_matches_dense(seed: u64, n in 1usize..=4) {
        let mut r = rng(seed);
        let (a, b) = (random_pauli(n, &mut r), random_pauli(n, &mut r));
        let dense = a.to_dense_unchecked().mul(&b.to_dense_unchecked());
        prop_assert!(a.multiply(&b).unwrap().to_dense_kron().max_abs_diff(&dense) < 1e-12);
        let ab = a.multiply(&b).unwrap();
        let ba = b.multiply(&a).unwrap();
        prop_assert_eq!(a.commutes(&b).unwrap(), ab == ba);
        prop_assert!(ab == ba || ab.negated() == ba);
    }

    #[test]
    fn every_element_is_a_member(n in 1usize..=8, p_frac in 0.0f64..1.0) {
        let p = ((1u64 << n) as f64 * p_frac) as u64;
        let e = GroupElement::from_index(n, p).unwrap();
        let back = membership(&e.to_pauli()).unwrap();
        prop_assert_eq!(back, e);
        prop_assert_eq!(back.index(), p);
        prop_assert!(membership(&e.to_pauli().negated()).is_err());
    }

    #[test]
    fn spectrum_ignores_term_order(seed: u64, n in 2usize..=7) {
        let mut r = rng(seed);
        let o = random_subset_observable(n, &mut r);
        let mut terms: Vec<(f64, GroupElement)> = o.terms().iter().map(|t| (t.coefficient, t.element)).collect();
        terms.shuffle(&mut r);
        let shuffled = rebuild(&o, terms);
        prop_assert!(same_spectrum(&spectrum(&o).unwrap(), &spectrum(&shuffled).unwrap(), 1e-11 * scale(&o)));
    }

    #[test]
    fn spectrum_ignores_term_splitting(seed: u64, n in 2usize..=7) {
        let mut r = rng(seed);
        let o = random_subset_observable(n, &mut r);
        let mut terms = Vec::new();
        for t in o.terms() {
            let cut: f64 = r.random_range(0.1..0.9);
            terms.push((t.coefficient * cut, t.element));
            terms.push((t.coefficient * (1.0 - cut), t.element));
        }
        let split = rebuild(&o, terms);
        prop_assert_eq!(split.terms().len(), o.terms().len());
        prop_assert!(same_spectrum(&spectrum(&o).unwrap(), &spectrum(&split).unwrap(), 1e-9));
    }

    #[test]
    fn spectrum_ignores_completion_choice(seed: u64, n in 2usize..=7) {
        let mut r = rng(seed);
        let o = random_subset_observable(n, &mut r);
        let mut completion: Vec<GroupElement> = elements(n).unwrap().filter(|e| !e.is_identity()).collect();
        completion.shuffle(&mut r);
        let a = spectrum(&o).unwrap();
        let b = spectrum_with_completion(&o, &completion).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn streaming_matches_full(seed: u64, n in 1usize..=10) {
        let mut r = rng(seed);
        let o = random_subset_observable(n, &mut r);
        let full = spectrum(&o).unwrap();
        let stream = key_eigenvalues_streaming(&o).unwrap();
        prop_assert_eq!(*full.key(), stream);
    }

    #[test]
    fn bounds_are_monotone_in_mean(seed: u64, n in 2usize..=8, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let mut r = rng(seed);
        let o = random_class_observable(n, &mut r);
        let s = spectrum(&o).unwrap();
        let k = *s.key();
        let (lo, hi) = (a.min(b), a.max(b));
        let at = |t: f64| fidelity_bounds(&s, k.min + t * (k.max - k.min)).unwrap();
        let (x, y) = (at(lo), at(hi));
        prop_assert!(x.lower <= y.lower + 1e-12 && x.upper <= y.upper + 1e-12);
        prop_assert!(x.lower <= x.upper + 1e-12);
        prop_assert!(x.lower_clamped <= x.upper_clamped);
        prop_assert_eq!(witness_verdict(&x).gme_certified, x.lower_clamped > 0.5);
    }

    #[test]
    fn lp_range_matches_generic_solver(seed: u64, n in 2usize..=6, t in 0.0f64..=1.0) {
        let mut r = rng(seed);
        let o = random_subset_observable(n, &mut r);
        let s = spectrum(&o).unwrap();
        let k = *s.key();
        let mean = k.min + t * (k.max - k.min);
        let range = lp_fidelity_range(&s, mean).unwrap();
        let (min, max) = lp_oracle(&s, mean);
        prop_assert!((range.lower - min).abs() < 1e-7, "min {} vs {}", range.lower, min);
        prop_assert!((range.upper - max).abs() < 1e-7, "max {} vs {}", range.upper, max);
        if k.in_class {
            let b = fidelity_bounds(&s, mean).unwrap();
            prop_assert!((b.lower_clamped - range.lower).abs() < 1e-9);
            prop_assert!((b.upper_clamped - range.upper).abs() < 1e-9);
        }
    }

    #[test]
    fn min_variance_reproduces_mean(seed: u64, n in 2usize..=7, t in 0.0f64..=1.0) {
        let mut r = rng(seed);
        let o = random_subset_observable(n, &mut r);
        let s = spectrum(&o).unwrap();
        let k = *s.key();
        let mean = k.min + t * (k.max - k.min);
        let d = min_variance_distribution(&s, mean).unwrap();
        let total: f64 = d.support.iter().map(|p| p.probability).sum();
        let first: f64 = d.support.iter().map(|p| p.probability * p.eigenvalue).sum();
        let second: f64 = d.support.iter().map(|p| p.probability * (p.eigenvalue - mean).powi(2)).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        prop_assert!((first - mean).abs() < 1e-9 * k.max.abs().max(1.0));
        prop_assert!((second - d.variance).abs() < 1e-9 * k.max.powi(2).max(1.0));
        prop_assert!(d.support.iter().all(|p| p.probability >= 0.0));
        if d.support.len() == 2 {
            prop_assert_eq!(d.support[1].index, d.support[0].index + 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_states_lie_inside_bounds(seed: u64, n in 2usize..=4) {
        let mut r = rng(seed);
        let o = random_class_observable(n, &mut r);
        let rho = random_density(n, &mut r);
        let mean = rho.trace_product(&o.to_dense_unchecked()).re;
        let ghz = ghz_vector(n).unwrap();
        let f = rho.element(&ghz, &ghz).re;
        let b = fidelity_bounds(&spectrum(&o).unwrap(), mean).unwrap();
        prop_assert!(b.contains(f, 1e-9), "{} outside {:?}", f, b);
    }

    #[test]
    fn bounds_are_saturated(seed: u64, n in 2usize..=4, q in 0.0f64..=1.0) {
        let mut r = rng(seed);
        let o = random_class_observable(n, &mut r);
        let s = spectrum(&o).unwrap();
        let (m, r2, rs) = s.key().triple().unwrap();
        let (values, vectors) = o.to_dense_unchecked().hermitian_eigen();
        let ghz = ghz_vector(n).unwrap();
        let tol = 1e-9 * m.abs().max(1.0);
        let pick = |target: f64| {
            let k = values.iter().position(|v| (v - target).abs() < tol).unwrap();
            DenseOperator::projector(&vectors[k])
        };
        let phi = DenseOperator::projector(&ghz).scale(q);
        let dense = o.to_dense_unchecked();
        for (other, is_lower) in [(pick(r2), true), (pick(rs), false)] {
            let rho = plus(&phi, &other.scale(1.0 - q));
            let mean = rho.trace_product(&dense).re;
            let f = rho.element(&ghz, &ghz).re;
            prop_assert!((f - q).abs() < 1e-9);
            let b: FidelityInterval = fidelity_bounds(&s, mean).unwrap();
            let bound = if is_lower { b.lower } else { b.upper };
            prop_assert!((bound - q).abs() < 1e-9, "bound {} vs {}", bound, q);
        }
    }
}
