//! The stabilizer group of the GHZ state `(|0…0⟩ + |1…1⟩)/√2`.
//!
//! Its `2^n` elements are the products `O_p = ∏_j (σ_x)^{b_0} (σ_z)^{b_j}`
//! where `b_0 b_1 … b_{n-1}` is the binary expansion of `p` (most significant
//! bit first) and `b_n` completes the parity of `b_1 … b_{n-1}`. Every element
//! is `σ_x` on all sites or on none, times an even number of `σ_z` factors.
//! The group is abelian and isomorphic to `(Z_2)^n`, so we carry elements as
//! vectors over GF(2) and products are XORs.

use std::fmt;

use crate::error::{Error, Result};
use crate::pauli::{check_sites, low_mask, PauliString};

/// Largest `n` for which [`enumerate_group`] materializes the full group.
pub const ENUMERATE_MAX_N: usize = 24;

/// An element `O_p` of the GHZ stabilizer group.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    n: usize,
    b0: bool,
    z_mask: u64,
}

impl GroupElement {
    /// Builds an element from its `σ_x` flag and `σ_z` mask. The mask must have
    /// even weight.
    pub fn new(n: usize, b0: bool, z_mask: u64) -> Result<Self> {
        check_sites(n)?;
        if z_mask & !low_mask(n) != 0 || !z_mask.count_ones().is_multiple_of(2) {
            let x_mask = if b0 { low_mask(n) } else { 0 };
            let s = PauliString::new(n, x_mask, z_mask & low_mask(n), 0)?;
            return Err(Error::NotInGroup(s.to_string()));
        }
        Ok(GroupElement { n, b0, z_mask })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, false, 0)
    }

    /// The element `O_p`.
    pub fn from_index(n: usize, p: u64) -> Result<Self> {
        check_sites(n)?;
        if n < 64 && p >> n != 0 {
            return Err(Error::IndexOutOfRange { n, p });
        }
        let b0 = (p >> (n - 1)) & 1 == 1;
        let mut z_mask = 0u64;
        for j in 1..n {
            if (p >> (n - 1 - j)) & 1 == 1 {
                z_mask |= 1 << (j - 1);
            }
        }
        if z_mask.count_ones() % 2 == 1 {
            z_mask |= 1 << (n - 1);
        }
        Ok(GroupElement { n, b0, z_mask })
    }

    /// Inverse of [`GroupElement::from_index`].
    pub fn index(&self) -> u64 {
        let n = self.n;
        let mut p = (self.b0 as u64) << (n - 1);
        for j in 1..n {
            if (self.z_mask >> (j - 1)) & 1 == 1 {
                p |= 1 << (n - 1 - j);
            }
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn b0(&self) -> bool {
        self.b0
    }

    pub fn z_mask(&self) -> u64 {
        self.z_mask
    }

    pub fn is_identity(&self) -> bool {
        !self.b0 && self.z_mask == 0
    }

    /// The element as a GF(2) vector: `z_mask` in the low `n` bits, `b0` at bit `n`.
    pub fn gf2_vector(&self) -> u128 {
        self.z_mask as u128 | (self.b0 as u128) << self.n
    }

    pub fn to_pauli(&self) -> PauliString {
        let x_mask = if self.b0 { low_mask(self.n) } else { 0 };
        PauliString::new(self.n, x_mask, self.z_mask, 0).expect("valid masks")
    }

    /// Recognizes a Pauli string as a group element.
    pub fn from_pauli(s: &PauliString) -> Result<Self> {
        membership(s)
    }

    pub fn product(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(GroupElement {
            n: self.n,
            b0: self.b0 ^ other.b0,
            z_mask: self.z_mask ^ other.z_mask,
        })
    }

    pub fn label(&self) -> String {
        self.to_pauli().label()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O_{}", self.label())
    }
}

pub fn element_from_index(n: usize, p: u64) -> Result<GroupElement> {
    GroupElement::from_index(n, p)
}

pub fn group_product(a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
    a.product(b)
}

/// `σ_x^{⊗n}` followed by `σ_z^j σ_z^n` for `j = 1 … n-1`.
pub fn canonical_generators(n: usize) -> Result<Vec<GroupElement>> {
    if n < 2 {
        return Err(Error::TooFewSites { min: 2, got: n });
    }
    check_sites(n)?;
    let mut gens = Vec::with_capacity(n);
    gens.push(GroupElement::new(n, true, 0)?);
    for j in 0..n - 1 {
        gens.push(GroupElement::new(n, false, 1 << j | 1 << (n - 1))?);
    }
    Ok(gens)
}

/// Decides whether `s` is an element of the group.
///
/// Strings with the right shape but an overall `-1` are reported as
/// [`Error::NegatedElement`].
pub fn membership(s: &PauliString) -> Result<GroupElement> {
    let n = s.n();
    if !s.is_real_signed() {
        return Err(Error::NotRealSigned(s.to_string()));
    }
    let full = low_mask(n);
    let uniform_x = s.x_mask() == 0 || s.x_mask() == full;
    if !uniform_x || !s.z_mask().count_ones().is_multiple_of(2) {
        return Err(Error::NotInGroup(s.to_string()));
    }
    if s.phase_exp() == 2 {
        return Err(Error::NegatedElement(s.to_string()));
    }
    Ok(GroupElement {
        n,
        b0: s.x_mask() == full,
        z_mask: s.z_mask(),
    })
}

/// All group elements in index order, lazily.
pub fn elements(n: usize) -> Result<impl Iterator<Item = GroupElement>> {
    check_sites(n)?;
    if n >= 64 {
        return Err(Error::CapExceeded {
            what: "group enumeration",
            n,
            cap: 63,
        });
    }
    Ok((0..1u64 << n).map(move |p| GroupElement::from_index(n, p).expect("index in range")))
}

pub fn enumerate_group(n: usize) -> Result<Vec<GroupElement>> {
    if n > ENUMERATE_MAX_N {
        return Err(Error::CapExceeded {
            what: "group enumeration",
            n,
            cap: ENUMERATE_MAX_N,
        });
    }
    Ok(elements(n)?.collect())
}

/// Result of Gaussian elimination over GF(2) on a list of group elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Basis {
    n: usize,
    /// Input positions of the independent vectors, in the order they were found.
    basis: Vec<usize>,
    vectors: Vec<u128>,
    /// For each input, a bitmask over `basis` positions whose XOR reproduces it.
    decompositions: Vec<u128>,
}

impl Gf2Basis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// True when the inputs generate the whole group.
    pub fn generates_group(&self) -> bool {
        self.rank() == self.n
    }

    pub fn basis_indices(&self) -> &[usize] {
        &self.basis
    }

    pub fn vectors(&self) -> &[u128] {
        &self.vectors
    }

    pub fn decomposition_mask(&self, input: usize) -> u128 {
        self.decompositions[input]
    }

    /// Basis positions whose product gives input `input`.
    pub fn decomposition(&self, input: usize) -> Vec<usize> {
        let mask = self.decompositions[input];
        (0..self.rank()).filter(|&k| mask >> k & 1 == 1).collect()
    }
}

pub fn rank_gf2(elements: &[GroupElement]) -> Result<Gf2Basis> {
    let first = elements.first().ok_or(Error::Empty("element list"))?;
    let n = first.n;
    // (pivot bit, reduced row, combination of basis vectors forming the row)
    let mut pivots: Vec<(u32, u128, u128)> = Vec::new();
    let mut basis = Vec::new();
    let mut vectors = Vec::new();
    let mut decompositions = Vec::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        if e.n != n {
            return Err(Error::SizeMismatch(n, e.n));
        }
        let v = e.gf2_vector();
        let (mut row, mut combo) = (v, 0u128);
        for &(bit, prow, pcombo) in &pivots {
            if row >> bit & 1 == 1 {
                row ^= prow;
                combo ^= pcombo;
            }
        }
        if row == 0 {
            decompositions.push(combo);
        } else {
            let k = basis.len();
            basis.push(i);
            vectors.push(v);
            pivots.push((127 - row.leading_zeros(), row, combo ^ 1 << k));
            decompositions.push(1 << k);
        }
    }
    Ok(Gf2Basis {
        n,
        basis,
        vectors,
        decompositions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn el(label: &str) -> GroupElement {
        membership(&PauliString::from_label(label.len(), label, 1).unwrap()).unwrap()
    }

    fn labels(v: &[GroupElement]) -> BTreeSet<String> {
        v.iter().map(|e| e.label()).collect()
    }

    #[test]
    fn index_zero_is_identity() {
        let e = element_from_index(3, 0).unwrap();
        assert!(e.is_identity());
        assert!(e.to_pauli().is_identity());
    }

    #[test]
    fn leading_bit_is_all_x() {
        assert_eq!(element_from_index(3, 0b100).unwrap().label(), "xxx");
        assert!(matches!(
            element_from_index(3, 8),
            Err(Error::IndexOutOfRange { n: 3, p: 8 })
        ));
    }

    #[test]
    fn three_site_group_matches_projector_terms() {
        let got = labels(&enumerate_group(3).unwrap());
        let want: BTreeSet<String> = ["III", "Izz", "zIz", "zzI", "xxx", "xyy", "yxy", "yyx"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn two_site_group() {
        let got = labels(&enumerate_group(2).unwrap());
        let want: BTreeSet<String> = ["II", "zz", "yy", "xx"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn index_round_trip() {
        for n in 1..=8 {
            for p in 0..1u64 << n {
                let e = element_from_index(n, p).unwrap();
                assert_eq!(e.index(), p);
                assert_eq!(e.z_mask().count_ones() % 2, 0);
                assert_eq!(membership(&e.to_pauli()).unwrap(), e);
            }
        }
    }

    #[test]
    fn products() {
        assert_eq!(group_product(&el("xyy"), &el("yxy")).unwrap(), el("zzI"));
        let x = el("xyy");
        assert!(x.product(&x).unwrap().is_identity());
        assert_eq!(x.product(&GroupElement::identity(3).unwrap()).unwrap(), x);
        assert!(x.product(&el("xx")).is_err());
    }

    #[test]
    fn canonical_generator_sets() {
        assert_eq!(
            labels(&canonical_generators(2).unwrap()),
            ["xx", "zz"].iter().map(|s| s.to_string()).collect()
        );
        let g3 = canonical_generators(3).unwrap();
        assert_eq!(
            labels(&g3),
            ["xxx", "zIz", "Izz"]
                .iter()
                .map(|s| s.to_string())
                .collect()
        );
        assert!(matches!(
            canonical_generators(1),
            Err(Error::TooFewSites { .. })
        ));
        for n in 2..=10 {
            assert_eq!(
                rank_gf2(&canonical_generators(n).unwrap()).unwrap().rank(),
                n
            );
        }
    }

    #[test]
    fn membership_cases() {
        let s = |l: &str, sign| PauliString::from_label(l.len(), l, sign).unwrap();
        assert_eq!(membership(&s("xyy", 1)).unwrap(), el("xyy"));
        assert!(matches!(
            membership(&s("xxI", 1)),
            Err(Error::NotInGroup(_))
        ));
        assert!(matches!(
            membership(&s("zII", 1)),
            Err(Error::NotInGroup(_))
        ));
        assert!(matches!(
            membership(&s("xyy", -1)),
            Err(Error::NegatedElement(_))
        ));
        // σ_x σ_x σ_x-shaped but with one XZ site: not real-signed.
        let odd = PauliString::new(3, 0b111, 0b011, 1).unwrap();
        assert!(matches!(membership(&odd), Err(Error::NotRealSigned(_))));
    }

    #[test]
    fn ranks() {
        let b = rank_gf2(&[el("xyy"), el("yxy"), el("yyx")]).unwrap();
        assert_eq!(b.rank(), 3);
        assert!(b.generates_group());

        let b = rank_gf2(&[el("xyy"), el("yxy"), el("zzI")]).unwrap();
        assert_eq!(b.rank(), 2);
        assert_eq!(b.decomposition(2), vec![0, 1]);

        let b = rank_gf2(&[GroupElement::identity(3).unwrap()]).unwrap();
        assert_eq!(b.rank(), 0);
        assert!(b.decomposition(0).is_empty());

        assert!(matches!(rank_gf2(&[]), Err(Error::Empty(_))));
        assert!(rank_gf2(&[el("xx"), el("xxx")]).is_err());
    }

    #[test]
    fn decompositions_reproduce_inputs() {
        let all = enumerate_group(4).unwrap();
        let b = rank_gf2(&all).unwrap();
        assert_eq!(b.rank(), 4);
        for (i, e) in all.iter().enumerate() {
            let v = b
                .decomposition(i)
                .iter()
                .fold(0u128, |acc, &k| acc ^ b.vectors()[k]);
            assert_eq!(v, e.gf2_vector());
        }
    }
}
