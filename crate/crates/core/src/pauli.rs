//! Signed Pauli products on `n` qubit sites in the binary symplectic encoding.
//!
//! A [`PauliString`] stands for the operator `i^phase · ∏_j X^{x_j} Z^{z_j}`,
//! where at each site the `X` factor is applied before the `Z` factor. Site 1
//! (the leftmost character of a label) is bit 0 of both masks.
//!
//! Labels use the alphabet `I`, `x`, `y`, `z`. The character `y` denotes the
//! real matrix `iσ_y = -XZ`, so a label such as `xyy` is exactly the GHZ
//! stabilizer `σ_x ⊗ iσ_y ⊗ iσ_y`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported site count; masks live in one `u64`.
pub const MAX_SITES: usize = 64;

/// Per-site factor of a Pauli string, as written in labels.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum SiteOp {
    I,
    X,
    /// `iσ_y`, i.e. `-XZ`.
    Y,
    Z,
}

impl SiteOp {
    pub fn from_char(ch: char) -> Option<SiteOp> {
        match ch {
            'I' => Some(SiteOp::I),
            'x' => Some(SiteOp::X),
            'y' => Some(SiteOp::Y),
            'z' => Some(SiteOp::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            SiteOp::I => 'I',
            SiteOp::X => 'x',
            SiteOp::Y => 'y',
            SiteOp::Z => 'z',
        }
    }

    fn from_bits(x: bool, z: bool) -> SiteOp {
        match (x, z) {
            (false, false) => SiteOp::I,
            (true, false) => SiteOp::X,
            (true, true) => SiteOp::Y,
            (false, true) => SiteOp::Z,
        }
    }
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn check_sites(n: usize) -> Result<()> {
    if n == 0 || n > MAX_SITES {
        return Err(Error::SiteCount(n));
    }
    Ok(())
}

/// An `n`-site Pauli product with a phase in `{1, i, -1, -i}`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x_mask: u64,
    z_mask: u64,
    phase_exp: u8,
}

impl PauliString {
    /// Builds a string from raw masks. Bits above `n` are rejected.
    pub fn new(n: usize, x_mask: u64, z_mask: u64, phase_exp: u8) -> Result<Self> {
        check_sites(n)?;
        let mask = low_mask(n);
        if x_mask & !mask != 0 || z_mask & !mask != 0 {
            return Err(Error::LabelLength {
                label: format!("masks {x_mask:#b}/{z_mask:#b}"),
                len: 64 - (x_mask | z_mask).leading_zeros() as usize,
                expected: n,
            });
        }
        Ok(PauliString {
            n,
            x_mask,
            z_mask,
            phase_exp: phase_exp & 3,
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, 0, 0, 0)
    }

    /// Parses a label over `{I, x, y, z}` with an overall sign of `+1` or `-1`.
    pub fn from_label(n: usize, label: &str, sign: i32) -> Result<Self> {
        check_sites(n)?;
        let phase_sign = match sign {
            1 => 0u8,
            -1 => 2u8,
            s => return Err(Error::InvalidSign(s)),
        };
        let len = label.chars().count();
        if len != n {
            return Err(Error::LabelLength {
                label: label.to_string(),
                len,
                expected: n,
            });
        }
        let (mut x_mask, mut z_mask, mut ys) = (0u64, 0u64, 0u32);
        for (pos, ch) in label.chars().enumerate() {
            let op = SiteOp::from_char(ch).ok_or_else(|| Error::InvalidLabelChar {
                label: label.to_string(),
                ch,
                pos,
            })?;
            match op {
                SiteOp::I => {}
                SiteOp::X => x_mask |= 1 << pos,
                SiteOp::Z => z_mask |= 1 << pos,
                SiteOp::Y => {
                    x_mask |= 1 << pos;
                    z_mask |= 1 << pos;
                    ys += 1;
                }
            }
        }
        // iσ_y = -XZ: each y contributes a factor -1.
        let phase = (phase_sign as u32 + 2 * ys) % 4;
        Ok(PauliString {
            n,
            x_mask,
            z_mask,
            phase_exp: phase as u8,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_mask(&self) -> u64 {
        self.x_mask
    }

    pub fn z_mask(&self) -> u64 {
        self.z_mask
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    /// Number of sites carrying both an `X` and a `Z` factor.
    pub fn xz_sites(&self) -> u32 {
        (self.x_mask & self.z_mask).count_ones()
    }

    pub fn is_real_signed(&self) -> bool {
        self.phase_exp.is_multiple_of(2)
    }

    pub fn is_hermitian(&self) -> bool {
        (self.phase_exp as u32 + self.xz_sites()).is_multiple_of(2)
    }

    pub fn is_identity(&self) -> bool {
        self.x_mask == 0 && self.z_mask == 0 && self.phase_exp == 0
    }

    pub fn site(&self, j: usize) -> SiteOp {
        SiteOp::from_bits(self.x_mask >> j & 1 == 1, self.z_mask >> j & 1 == 1)
    }

    /// Label characters in site order, without sign.
    pub fn label(&self) -> String {
        (0..self.n).map(|j| self.site(j).as_char()).collect()
    }

    /// Phase relative to the label convention (`y` = `iσ_y`): the operator
    /// equals `i^k` times the labelled product, for the returned `k`.
    pub fn label_phase(&self) -> u8 {
        ((self.phase_exp as u32 + 2 * self.xz_sites()) % 4) as u8
    }

    /// The same operator with the opposite sign.
    pub fn negated(&self) -> PauliString {
        PauliString {
            phase_exp: (self.phase_exp + 2) & 3,
            ..*self
        }
    }

    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        let swaps = (self.z_mask & other.x_mask).count_ones();
        let phase = (self.phase_exp as u32 + other.phase_exp as u32 + 2 * swaps) % 4;
        Ok(PauliString {
            n: self.n,
            x_mask: self.x_mask ^ other.x_mask,
            z_mask: self.z_mask ^ other.z_mask,
            phase_exp: phase as u8,
        })
    }

    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        let symplectic =
            (self.x_mask & other.z_mask).count_ones() + (self.z_mask & other.x_mask).count_ones();
        Ok(symplectic.is_multiple_of(2))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.label_phase() {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}{}", self.label())
    }
}
