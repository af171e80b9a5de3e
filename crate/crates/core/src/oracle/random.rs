//! Seeded random instances for the property sweeps.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::seq::index::sample;
use rand::Rng;
use rand_distr::StandardNormal;

use super::DenseOperator;
use crate::observable::{Observable, TermInput};
use crate::pauli::PauliString;
use crate::stabilizer::{rank_gf2, GroupElement};

/// `G G† / Tr[G G†]` with i.i.d. complex Gaussian entries in `G`.
pub fn random_density<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DenseOperator {
    let dim = 1 << n;
    let g = DMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let rho = &g * g.adjoint();
    let tr = rho.trace();
    DenseOperator::from_matrix(n, rho / tr).expect("square of size 2^n")
}

pub fn random_pauli<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PauliString {
    let mask = crate::pauli::low_mask(n);
    PauliString::new(
        n,
        rng.random::<u64>() & mask,
        rng.random::<u64>() & mask,
        rng.random_range(0..4),
    )
    .expect("masked to n bits")
}

pub fn random_element<R: Rng + ?Sized>(n: usize, rng: &mut R) -> GroupElement {
    GroupElement::from_index(n, rng.random_range(0..1u64 << n)).expect("index in range")
}

/// Uniform on `(0, max]`.
pub fn positive_coefficient<R: Rng + ?Sized>(rng: &mut R, max: f64) -> f64 {
    max * (1.0 - rng.random::<f64>())
}

/// A random non-empty subset of the group with coefficients in `(0, 5]`.
pub fn random_subset_observable<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Observable {
    let size = 1usize << n;
    let k = rng.random_range(1..=size);
    let inputs = sample(rng, size, k)
        .into_iter()
        .map(|p| {
            let e = GroupElement::from_index(n, p as u64).expect("index in range");
            TermInput::new(positive_coefficient(rng, 5.0), e.to_pauli())
        })
        .collect();
    Observable::new(n, inputs).expect("valid group elements")
}

/// A random observable in `C_n`: random elements are added until they
/// generate the group, each with a coefficient in `(0, 5]`.
pub fn random_class_observable<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Observable {
    let mut chosen: Vec<GroupElement> = Vec::new();
    let extra = rng.random_range(0..=n);
    loop {
        let rank = if chosen.is_empty() {
            0
        } else {
            rank_gf2(&chosen).expect("non-empty").rank()
        };
        if rank == n && chosen.len() >= n + extra.min((1 << n) - n) {
            break;
        }
        let e = random_element(n, rng);
        if !chosen.contains(&e) {
            chosen.push(e);
        }
    }
    let inputs = chosen
        .iter()
        .map(|e| TermInput::new(positive_coefficient(rng, 5.0), e.to_pauli()))
        .collect();
    Observable::new(n, inputs).expect("valid group elements")
}
