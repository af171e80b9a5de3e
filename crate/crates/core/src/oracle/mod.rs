//! Dense-matrix ground truth for small `n`.
//!
//! Everything here is built the slow, obvious way: per-site 2×2 matrices
//! and Kronecker products (or, equivalently and faster, the action
//! `X^x Z^z |b⟩ = (-1)^{zb} |b ⊕ x⟩` on basis states), and a general
//! Hermitian eigensolver. Basis index bits are ordered with site 1 as the
//! most significant qubit, so the site `j` factor (mask bit `j - 1`) is the
//! `j`-th Kronecker factor from the left.
//! `|0⟩` and `|1⟩` are the `σ_z` eigenstates written `|+⟩` and `|−⟩` in the
//! GHZ state `(|+…+⟩ + |−…−⟩)/√2`.

pub mod random;
pub mod verify;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::observable::{check_class_membership, Observable};
use crate::pauli::PauliString;
use crate::stabilizer::{elements, GroupElement};

/// Largest `n` for which dense matrices are built.
pub const DENSE_MAX_N: usize = 12;
/// Largest `n` for dense eigen-solves and the projector expansion check.
pub const EIGEN_MAX_N: usize = 10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { what, n, cap });
    }
    Ok(())
}

fn i_pow(k: u8) -> Complex64 {
    match k & 3 {
        0 => ONE,
        1 => Complex64::new(0.0, 1.0),
        2 => -ONE,
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `X^x Z^z` on one site.
fn site_matrix(x: bool, z: bool) -> DMatrix<Complex64> {
    let (a, b, c, d) = match (x, z) {
        (false, false) => (1.0, 0.0, 0.0, 1.0),
        (false, true) => (1.0, 0.0, 0.0, -1.0),
        (true, false) => (0.0, 1.0, 1.0, 0.0),
        // X·Z = [[0, -1], [1, 0]]
        (true, true) => (0.0, -1.0, 1.0, 0.0),
    };
    DMatrix::from_row_slice(2, 2, &[a, b, c, d].map(|v| Complex64::new(v, 0.0)))
}

/// A `2^n × 2^n` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    n: usize,
    matrix: DMatrix<Complex64>,
}

impl DenseOperator {
    pub fn from_matrix(n: usize, matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = 1usize << n;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::SizeMismatch(dim, matrix.nrows()));
        }
        Ok(DenseOperator { n, matrix })
    }

    pub fn identity(n: usize) -> Self {
        DenseOperator {
            n,
            matrix: DMatrix::identity(1 << n, 1 << n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn mul(&self, other: &DenseOperator) -> DenseOperator {
        DenseOperator {
            n: self.n,
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn scale(&self, a: f64) -> DenseOperator {
        DenseOperator {
            n: self.n,
            matrix: &self.matrix * Complex64::new(a, 0.0),
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        self.matrix
            .iter()
            .zip(other.matrix.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_error(&self) -> f64 {
        self.max_abs_diff(&DenseOperator {
            n: self.n,
            matrix: self.matrix.adjoint(),
        })
    }

    pub fn max_imag(&self) -> f64 {
        self.matrix.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// `Tr[self · op]` without forming the product.
    pub fn trace_product(&self, op: &DenseOperator) -> Complex64 {
        let d = self.dim();
        let mut acc = ZERO;
        for i in 0..d {
            for j in 0..d {
                acc += self.matrix[(i, j)] * op.matrix[(j, i)];
            }
        }
        acc
    }

    pub fn apply(&self, v: &StateVector) -> StateVector {
        StateVector {
            n: self.n,
            amplitudes: &self.matrix * &v.amplitudes,
        }
    }

    /// `|v⟩⟨v|`.
    pub fn projector(v: &StateVector) -> DenseOperator {
        DenseOperator {
            n: v.n,
            matrix: &v.amplitudes * v.amplitudes.adjoint(),
        }
    }

    /// `⟨a| self |b⟩`.
    pub fn element(&self, a: &StateVector, b: &StateVector) -> Complex64 {
        a.inner(&self.apply(b))
    }

    /// Eigenvalues, descending, of a Hermitian operator.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let mut values: Vec<f64> = if self.max_imag() == 0.0 {
            self.matrix
                .map(|z| z.re)
                .symmetric_eigenvalues()
                .iter()
                .copied()
                .collect()
        } else {
            self.matrix
                .symmetric_eigenvalues()
                .iter()
                .copied()
                .collect()
        };
        values.sort_by(|a, b| b.total_cmp(a));
        values
    }

    /// Eigenvalues (descending) and matching unit eigenvectors.
    pub fn hermitian_eigen(&self) -> (Vec<f64>, Vec<StateVector>) {
        let mut pairs: Vec<(f64, DVector<Complex64>)> = if self.max_imag() == 0.0 {
            let real = self.matrix.map(|z| z.re);
            let eig = SymmetricEigen::new(real);
            (0..self.dim())
                .map(|k| {
                    (
                        eig.eigenvalues[k],
                        eig.eigenvectors.column(k).map(|x| Complex64::new(x, 0.0)),
                    )
                })
                .collect()
        } else {
            let eig = SymmetricEigen::new(self.matrix.clone());
            (0..self.dim())
                .map(|k| (eig.eigenvalues[k], eig.eigenvectors.column(k).into_owned()))
                .collect()
        };
        pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
        let (values, vectors) = pairs
            .into_iter()
            .map(|(v, amps)| {
                (
                    v,
                    StateVector {
                        n: self.n,
                        amplitudes: amps,
                    },
                )
            })
            .unzip();
        (values, vectors)
    }

    /// Checks Hermitian, unit trace and positive semidefinite, each to `tol`.
    pub fn validate_density(&self, tol: f64) -> Result<()> {
        let herm = self.hermiticity_error();
        if herm > tol {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (error {herm:e})"
            )));
        }
        let tr = self.trace();
        if (tr - ONE).norm() > tol {
            return Err(Error::InvalidDensity(format!("trace {tr} is not 1")));
        }
        let min = self.hermitian_eigenvalues().last().copied().unwrap_or(0.0);
        if min < -tol {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(())
    }
}

/// Types with a dense matrix representation.
pub trait ToDense {
    fn site_count(&self) -> usize;

    fn to_dense_unchecked(&self) -> DenseOperator;

    fn to_dense(&self) -> Result<DenseOperator> {
        self.to_dense_capped(DENSE_MAX_N)
    }

    fn to_dense_capped(&self, cap: usize) -> Result<DenseOperator> {
        check_cap("dense matrix", self.site_count(), cap)?;
        Ok(self.to_dense_unchecked())
    }
}

impl PauliString {
    /// Dense matrix as a Kronecker product of site matrices.
    pub fn to_dense_kron(&self) -> DenseOperator {
        let mut m = site_matrix(self.x_mask() & 1 == 1, self.z_mask() & 1 == 1);
        for j in 1..self.n() {
            m = m.kronecker(&site_matrix(
                self.x_mask() >> j & 1 == 1,
                self.z_mask() >> j & 1 == 1,
            ));
        }
        DenseOperator {
            n: self.n(),
            matrix: m * i_pow(self.phase_exp()),
        }
    }
}

/// Mask with site 1 at the most significant of `n` index bits.
fn index_mask(mask: u64, n: usize) -> usize {
    (mask.reverse_bits() >> (64 - n)) as usize
}

/// Adds `scale · P` to `acc`, column by column.
fn add_pauli(acc: &mut DMatrix<Complex64>, p: &PauliString, scale: Complex64) {
    let n = p.n();
    let (x, z) = (index_mask(p.x_mask(), n), index_mask(p.z_mask(), n));
    let phase = scale * i_pow(p.phase_exp());
    for col in 0..1usize << n {
        let sign = if (z & col).count_ones() % 2 == 1 {
            -phase
        } else {
            phase
        };
        acc[(col ^ x, col)] += sign;
    }
}

impl ToDense for PauliString {
    fn site_count(&self) -> usize {
        self.n()
    }

    fn to_dense_unchecked(&self) -> DenseOperator {
        let dim = 1 << self.n();
        let mut m = DMatrix::from_element(dim, dim, ZERO);
        add_pauli(&mut m, self, ONE);
        DenseOperator {
            n: self.n(),
            matrix: m,
        }
    }
}

impl ToDense for GroupElement {
    fn site_count(&self) -> usize {
        self.n()
    }

    fn to_dense_unchecked(&self) -> DenseOperator {
        self.to_pauli().to_dense_unchecked()
    }
}

impl ToDense for Observable {
    fn site_count(&self) -> usize {
        self.n()
    }

    fn to_dense_unchecked(&self) -> DenseOperator {
        let dim = 1 << self.n();
        let mut acc = DMatrix::from_element(dim, dim, ZERO);
        for t in self.terms() {
            add_pauli(
                &mut acc,
                &t.element.to_pauli(),
                Complex64::new(t.coefficient, 0.0),
            );
        }
        DenseOperator {
            n: self.n(),
            matrix: acc,
        }
    }
}

pub fn dense_matrix<T: ToDense + ?Sized>(x: &T) -> Result<DenseOperator> {
    x.to_dense()
}

/// A normalized vector of `2^n` amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    /// Normalizes `amplitudes`; fails on a zero vector.
    pub fn new(n: usize, amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.len() != 1 << n {
            return Err(Error::SizeMismatch(1 << n, amplitudes.len()));
        }
        let norm = amplitudes.norm();
        if norm == 0.0 {
            return Err(Error::InvalidDensity("zero state vector".into()));
        }
        Ok(StateVector {
            n,
            amplitudes: amplitudes / Complex64::new(norm, 0.0),
        })
    }

    /// `(|a⟩ + sign |b⟩)/√2` for computational basis indices `a`, `b`.
    fn cat(n: usize, a: usize, b: usize, sign: f64) -> StateVector {
        let mut amps = DVector::from_element(1 << n, ZERO);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        amps[a] += Complex64::new(h, 0.0);
        amps[b] += Complex64::new(sign * h, 0.0);
        StateVector {
            n,
            amplitudes: amps,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        (&self.amplitudes - &other.amplitudes)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

pub fn ghz_vector(n: usize) -> Result<StateVector> {
    if n < 2 {
        return Err(Error::TooFewSites { min: 2, got: n });
    }
    check_cap("GHZ vector", n, DENSE_MAX_N)?;
    Ok(StateVector::cat(n, 0, (1 << n) - 1, 1.0))
}

/// The eight three-qubit GHZ basis states `ψ_1 … ψ_8`, with `ψ_1 = |Φ_3⟩`.
///
/// `ψ_{k}` and `ψ_{9-k}` share a pair of basis kets and differ in relative
/// sign: `+++/−−−`, `−++/+−−`, `+−+/−+−`, `++−/−−+` for `k = 1 … 4`.
pub fn ghz_basis() -> [StateVector; 8] {
    // (first ket, second ket) for k = 1..4, site 1 most significant
    const PAIRS: [(usize, usize); 4] = [
        (0b000, 0b111),
        (0b100, 0b011),
        (0b010, 0b101),
        (0b001, 0b110),
    ];
    std::array::from_fn(|i| {
        let (k, sign) = if i < 4 { (i, 1.0) } else { (7 - i, -1.0) };
        let (a, b) = PAIRS[k];
        StateVector::cat(3, a, b, sign)
    })
}

/// Largest entry of `|Φ_n⟩⟨Φ_n| - 2^{-n} Σ_p O_p`.
pub fn projector_expansion_check(n: usize) -> Result<f64> {
    check_cap("projector expansion", n, EIGEN_MAX_N)?;
    let ghz = ghz_vector(n)?;
    let dim = 1 << n;
    let mut sum = DMatrix::from_element(dim, dim, ZERO);
    for e in elements(n)? {
        add_pauli(&mut sum, &e.to_pauli(), ONE);
    }
    let expansion = DenseOperator {
        n,
        matrix: sum / Complex64::new(dim as f64, 0.0),
    };
    Ok(DenseOperator::projector(&ghz).max_abs_diff(&expansion))
}

/// Dense eigenvalues of an observable, descending, with multiplicity.
pub fn dense_spectrum(obs: &Observable) -> Result<Vec<f64>> {
    check_cap("dense spectrum", obs.n(), EIGEN_MAX_N)?;
    Ok(obs.to_dense_unchecked().hermitian_eigenvalues())
}

/// Outcome of evaluating `1 - |⟨X⟩ - ⟨Y⟩| ≥ ⟨XY⟩ ≥ ⟨X⟩ + ⟨Y⟩ - 1` on a state.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct LemmaCheck {
    pub x: f64,
    pub y: f64,
    pub xy: f64,
    /// `1 - |⟨X⟩ - ⟨Y⟩| - ⟨XY⟩`
    pub upper_slack: f64,
    /// `⟨XY⟩ - ⟨X⟩ - ⟨Y⟩ + 1`
    pub lower_slack: f64,
}

impl LemmaCheck {
    pub const SLACK_TOL: f64 = 1e-10;

    pub fn min_slack(&self) -> f64 {
        self.upper_slack.min(self.lower_slack)
    }

    pub fn holds(&self) -> bool {
        self.min_slack() >= -Self::SLACK_TOL
    }
}

pub fn lemma_check(state: &DenseOperator, x: &PauliString, y: &PauliString) -> Result<LemmaCheck> {
    if !x.commutes(y)? {
        return Err(Error::NonCommuting);
    }
    for s in [x, y] {
        if !(s.is_real_signed() && s.is_hermitian()) {
            return Err(Error::NotRealSigned(s.to_string()));
        }
    }
    if state.n() != x.n() {
        return Err(Error::SizeMismatch(state.n(), x.n()));
    }
    state.validate_density(1e-9)?;
    let ex = state.trace_product(&x.to_dense()?).re;
    let ey = state.trace_product(&y.to_dense()?).re;
    let exy = state.trace_product(&x.multiply(y)?.to_dense()?).re;
    Ok(LemmaCheck {
        x: ex,
        y: ey,
        xy: exy,
        upper_slack: 1.0 - (ex - ey).abs() - exy,
        lower_slack: exy - ex - ey + 1.0,
    })
}

/// Details behind [`ghz_is_top_eigenvector`].
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct TopEigenspace {
    pub top: f64,
    pub gap: f64,
    /// `|⟨top eigenvector|Φ_n⟩|²`
    pub overlap: f64,
}

impl TopEigenspace {
    pub fn is_ghz(&self) -> bool {
        self.gap > 1e-8 && self.overlap >= 1.0 - 1e-10
    }
}

pub fn top_eigenspace(obs: &Observable) -> Result<TopEigenspace> {
    check_cap("top eigenspace", obs.n(), 8)?;
    let (values, vectors) = obs.to_dense_unchecked().hermitian_eigen();
    let ghz = ghz_vector(obs.n())?;
    Ok(TopEigenspace {
        top: values[0],
        gap: values[0] - values.get(1).copied().unwrap_or(f64::NEG_INFINITY),
        overlap: vectors[0].inner(&ghz).norm_sqr(),
    })
}

/// True iff the largest eigenvalue is simple with eigenvector `|Φ_n⟩`.
pub fn ghz_is_top_eigenvector(obs: &Observable) -> Result<bool> {
    check_class_membership(obs).require()?;
    Ok(top_eigenspace(obs)?.is_ghz())
}

/// Expectations in the state `V·|Φ_n⟩⟨Φ_n| + (1 - V)·I/2^n`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct WernerExpectations {
    pub mean: f64,
    pub fidelity: f64,
    /// The same quantities by dense trace, for `n ≤ 8`.
    pub dense: Option<(f64, f64)>,
}

pub fn werner_state(n: usize, visibility: f64) -> Result<DenseOperator> {
    if !(0.0..=1.0).contains(&visibility) {
        return Err(Error::Visibility(visibility));
    }
    let ghz = ghz_vector(n)?;
    let dim = (1usize << n) as f64;
    let mixed = DenseOperator::identity(n).scale((1.0 - visibility) / dim);
    let proj = DenseOperator::projector(&ghz).scale(visibility);
    Ok(DenseOperator {
        n,
        matrix: proj.matrix + mixed.matrix,
    })
}

pub fn werner_expectations(
    n: usize,
    visibility: f64,
    obs: &Observable,
) -> Result<WernerExpectations> {
    if !(0.0..=1.0).contains(&visibility) {
        return Err(Error::Visibility(visibility));
    }
    if obs.n() != n {
        return Err(Error::SizeMismatch(n, obs.n()));
    }
    let mean = obs
        .terms()
        .iter()
        .map(|t| {
            t.coefficient
                * if t.element.is_identity() {
                    1.0
                } else {
                    visibility
                }
        })
        .sum();
    let fidelity = visibility + (1.0 - visibility) / (1u64 << n) as f64;
    let dense = if (2..=8).contains(&n) {
        let rho = werner_state(n, visibility)?;
        let ghz = ghz_vector(n)?;
        let dm = rho.trace_product(&obs.to_dense_unchecked()).re;
        let df = rho.element(&ghz, &ghz).re;
        Some((dm, df))
    } else {
        None
    };
    Ok(WernerExpectations {
        mean,
        fidelity,
        dense,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizer::canonical_generators;

    fn p(label: &str) -> PauliString {
        PauliString::from_label(label.len(), label, 1).unwrap()
    }

    fn diag(values: &[f64]) -> DenseOperator {
        let n = values.len().trailing_zeros() as usize;
        let m = DMatrix::from_diagonal(&DVector::from_iterator(
            values.len(),
            values.iter().map(|&v| Complex64::new(v, 0.0)),
        ));
        DenseOperator::from_matrix(n, m).unwrap()
    }

    #[test]
    fn basis_action_matches_kronecker() {
        for n in 1..=4 {
            for x in 0..1u64 << n {
                for z in 0..1u64 << n {
                    for ph in 0..4 {
                        let s = PauliString::new(n, x, z, ph).unwrap();
                        assert_eq!(s.to_dense_unchecked(), s.to_dense_kron(), "{s}");
                    }
                }
            }
        }
    }

    #[test]
    fn identity_matrix() {
        let d = dense_matrix(&PauliString::identity(2).unwrap()).unwrap();
        assert_eq!(d, DenseOperator::identity(2));
    }

    #[test]
    fn yy_label_is_minus_sigma_y_squared() {
        let sy = DMatrix::from_row_slice(
            2,
            2,
            &[
                ZERO,
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, 1.0),
                ZERO,
            ],
        );
        let want = DenseOperator::from_matrix(2, -sy.kronecker(&sy)).unwrap();
        assert!(dense_matrix(&p("yy")).unwrap().max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn zzi_is_diagonal() {
        let d = dense_matrix(&p("zzI")).unwrap();
        let want = diag(&[1., 1., -1., -1., -1., -1., 1., 1.]);
        assert_eq!(d.max_abs_diff(&want), 0.0);
    }

    #[test]
    fn product_matches_dense_product() {
        let (a, b) = (p("xyy"), p("yxy"));
        let lhs = dense_matrix(&a.multiply(&b).unwrap()).unwrap();
        let rhs = dense_matrix(&a).unwrap().mul(&dense_matrix(&b).unwrap());
        assert!(lhs.max_abs_diff(&rhs) < 1e-15);
        let (x, z) = (
            dense_matrix(&p("x")).unwrap(),
            dense_matrix(&p("z")).unwrap(),
        );
        let anti = x.mul(&z).matrix + z.mul(&x).matrix;
        assert!(anti.iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn four_setting_dense_spectrum() {
        let o = Observable::from_labels(3, &[("xyy", 1.), ("yxy", 1.), ("yyx", 1.), ("xxx", 1.)])
            .unwrap();
        let d = dense_matrix(&o).unwrap();
        assert!(d.hermiticity_error() < 1e-15);
        let ev = dense_spectrum(&o).unwrap();
        let want = [4., 0., 0., 0., 0., 0., 0., -4.];
        for (a, b) in ev.iter().zip(want) {
            assert!((a - b).abs() < 1e-10);
        }
        let id = Observable::from_labels(2, &[("II", 1.5)]).unwrap();
        assert!(dense_spectrum(&id)
            .unwrap()
            .iter()
            .all(|&v| (v - 1.5).abs() < 1e-12));
    }

    #[test]
    fn ghz_vectors() {
        let g = ghz_vector(2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let want: Vec<f64> = vec![h, 0., 0., h];
        assert!(g
            .amplitudes()
            .iter()
            .zip(want)
            .all(|(a, b)| (a.re - b).abs() < 1e-15 && a.im == 0.0));
        assert!(ghz_vector(1).is_err());
        assert!(ghz_vector(13).is_err());
    }

    #[test]
    fn ghz_basis_orthonormal() {
        let basis = ghz_basis();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((a.inner(b) - Complex64::new(want, 0.0)).norm() < 1e-15);
            }
        }
        assert_eq!(basis[0], ghz_vector(3).unwrap());
    }

    #[test]
    fn case_three_is_diagonal_in_ghz_basis() {
        let o = Observable::from_labels(3, &[("xyy", 1.), ("yxy", 1.), ("yyx", 1.)]).unwrap();
        let d = dense_matrix(&o).unwrap();
        let basis = ghz_basis();
        let want = [3., -1., -1., -1., 1., 1., 1., -3.];
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let w = if i == j { want[i] } else { 0.0 };
                assert!((d.element(a, b) - Complex64::new(w, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn projector_expansion_small() {
        assert!(projector_expansion_check(2).unwrap() < 1e-12);
        assert!(projector_expansion_check(3).unwrap() < 1e-12);
        assert!(projector_expansion_check(11).is_err());
    }

    #[test]
    fn stabilizers_fix_ghz() {
        for n in 2..=5 {
            let g = ghz_vector(n).unwrap();
            for e in elements(n).unwrap() {
                let d = dense_matrix(&e).unwrap();
                assert!(d.apply(&g).max_abs_diff(&g) < 1e-14);
            }
        }
    }

    #[test]
    fn lemma_examples() {
        let g = ghz_vector(2).unwrap();
        let rho = DenseOperator::projector(&g);
        let c = lemma_check(&rho, &p("xx"), &p("zz")).unwrap();
        assert!(
            (c.x - 1.0).abs() < 1e-14 && (c.y - 1.0).abs() < 1e-14 && (c.xy - 1.0).abs() < 1e-14
        );
        assert!(c.holds());
        assert!(c.upper_slack.abs() < 1e-14 && c.lower_slack.abs() < 1e-14);

        let mixed = DenseOperator::identity(3).scale(1.0 / 8.0);
        let c = lemma_check(&mixed, &p("xyy"), &p("zzI")).unwrap();
        assert_eq!((c.upper_slack, c.lower_slack), (1.0, 1.0));

        assert!(matches!(
            lemma_check(&DenseOperator::identity(1).scale(0.5), &p("x"), &p("z")),
            Err(Error::NonCommuting)
        ));
        assert!(matches!(
            lemma_check(&DenseOperator::identity(2), &p("xx"), &p("zz")),
            Err(Error::InvalidDensity(_))
        ));
        assert!(matches!(
            lemma_check(&diag(&[1.5, -0.5, 0.0, 0.0]), &p("xx"), &p("zz")),
            Err(Error::InvalidDensity(_))
        ));
    }

    #[test]
    fn top_eigenvector_examples() {
        let four =
            Observable::from_labels(3, &[("xyy", 1.), ("yxy", 1.), ("yyx", 1.), ("xxx", 1.)])
                .unwrap();
        assert!(ghz_is_top_eigenvector(&four).unwrap());
        for n in 2..=6 {
            let o = Observable::from_elements(&canonical_generators(n).unwrap()).unwrap();
            assert!(ghz_is_top_eigenvector(&o).unwrap());
        }
        let case2 = Observable::from_labels(3, &[("xyy", 1.), ("yxy", 1.), ("zzI", 1.)]).unwrap();
        assert!(matches!(
            ghz_is_top_eigenvector(&case2),
            Err(Error::NotInClass { .. })
        ));
        let top = top_eigenspace(&case2).unwrap();
        assert!(top.gap.abs() < 1e-10);
        assert!(!top.is_ghz());
    }

    #[test]
    fn werner_examples() {
        let case3 = Observable::from_labels(3, &[("xyy", 1.), ("yxy", 1.), ("yyx", 1.)]).unwrap();
        let w = werner_expectations(3, 0.8, &case3).unwrap();
        assert!((w.mean - 2.4).abs() < 1e-12);
        assert!((w.fidelity - 0.825).abs() < 1e-12);
        let (dm, df) = w.dense.unwrap();
        assert!((dm - 2.4).abs() < 1e-12 && (df - 0.825).abs() < 1e-12);

        let w = werner_expectations(3, 1.0, &case3).unwrap();
        assert_eq!((w.mean, w.fidelity), (3.0, 1.0));

        let with_id = Observable::from_labels(3, &[("III", 0.5), ("xxx", 2.0)]).unwrap();
        let w = werner_expectations(3, 0.0, &with_id).unwrap();
        assert_eq!((w.mean, w.fidelity), (0.5, 0.125));
        assert!(werner_expectations(3, 1.5, &case3).is_err());
    }
}
