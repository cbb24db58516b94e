//! The exact integral symplectic representation of braid words.
//!
//! The lattice is `Z^{2g}` with basis `e_1..e_g, f_1..f_g` and pairing
//! `θ(e_k, f_k) = 1`, all other basis pairings zero. Each positive braid
//! letter `t_i` acts as the transvection `x ↦ x + θ(v_i, x) v_i` along the
//! i-th chain class; matrices act on column vectors from the left and words
//! multiply left to right as written. Entries grow quickly with word length,
//! so everything is arbitrary-precision: overflow is a correctness bug here,
//! not an edge case.

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::artin::{BraidWord, Sign};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymprepError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("word on {strands} strands does not match genus {genus} (needs {expected})")]
    StrandGenusMismatch { strands: u32, genus: u32, expected: u32 },
    #[error("chain index {index} out of range 1..={max}")]
    IndexOutOfRange { index: u32, max: u32 },
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(u32, u32),
}

/// A vector in the rank-`2g` symplectic lattice, coordinates in the
/// `(e_1..e_g, f_1..f_g)` basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    coords: Vec<BigInt>,
}

impl LatticeVector {
    pub fn zero(genus: u32) -> LatticeVector {
        LatticeVector { coords: vec![BigInt::zero(); 2 * genus as usize] }
    }

    /// Builds a vector from coordinates; the length must be even and nonzero.
    pub fn from_coords(coords: Vec<BigInt>) -> LatticeVector {
        assert!(!coords.is_empty() && coords.len() % 2 == 0, "rank must be a positive even number");
        LatticeVector { coords }
    }

    pub fn from_i64(coords: &[i64]) -> LatticeVector {
        LatticeVector::from_coords(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The basis vector `e_k`, 1-based.
    pub fn basis_e(k: u32, genus: u32) -> LatticeVector {
        assert!((1..=genus).contains(&k));
        let mut v = LatticeVector::zero(genus);
        v.coords[k as usize - 1] = BigInt::one();
        v
    }

    /// The basis vector `f_k`, 1-based.
    pub fn basis_f(k: u32, genus: u32) -> LatticeVector {
        assert!((1..=genus).contains(&k));
        let mut v = LatticeVector::zero(genus);
        v.coords[(genus + k) as usize - 1] = BigInt::one();
        v
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn genus(&self) -> u32 {
        (self.coords.len() / 2) as u32
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// True when the gcd of the coordinates is 1.
    pub fn is_primitive(&self) -> bool {
        let mut gcd = BigInt::zero();
        for c in &self.coords {
            gcd = gcd.gcd(c);
        }
        gcd.is_one()
    }

    pub fn add(&self, other: &LatticeVector) -> Result<LatticeVector, SymprepError> {
        if self.rank() != other.rank() {
            return Err(SymprepError::RankMismatch(self.rank(), other.rank()));
        }
        Ok(LatticeVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn to_float(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (pos, c) in self.coords.iter().enumerate() {
            if pos > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Row `a^T J` of the pairing: `θ(a, x) = jrow(a) · x`.
fn pairing_row(a: &LatticeVector) -> Vec<BigInt> {
    let g = a.rank() / 2;
    let mut row = Vec::with_capacity(2 * g);
    for k in 0..g {
        row.push(-&a.coords[g + k]);
    }
    for k in 0..g {
        row.push(a.coords[k].clone());
    }
    row
}

/// The symplectic pairing `θ(a, b) = a^T J b = Σ_k (a_{e_k} b_{f_k} − a_{f_k} b_{e_k})`.
pub fn pairing(a: &LatticeVector, b: &LatticeVector) -> Result<BigInt, SymprepError> {
    if a.rank() != b.rank() {
        return Err(SymprepError::RankMismatch(a.rank(), b.rank()));
    }
    let g = a.rank() / 2;
    let mut total = BigInt::zero();
    for k in 0..g {
        total += &a.coords[k] * &b.coords[g + k] - &a.coords[g + k] * &b.coords[k];
    }
    Ok(total)
}

/// A `2g × 2g` integer matrix preserving the pairing: `M^T J M = J` exactly.
#[derive(Clone, PartialEq, Eq)]
pub struct SympMatrix {
    genus: u32,
    entries: Vec<BigInt>, // row-major
}

impl SympMatrix {
    pub fn identity(genus: u32) -> SympMatrix {
        assert!(genus >= 1);
        let n = 2 * genus as usize;
        let mut entries = vec![BigInt::zero(); n * n];
        for d in 0..n {
            entries[d * n + d] = BigInt::one();
        }
        SympMatrix { genus, entries }
    }

    /// The transvection `T_a(s): x ↦ x + s θ(a, x) a`, as the matrix
    /// `I + s · a (a^T J)`. Satisfies `T_{-a}(s) = T_a(s)` and
    /// `T_a(s) T_a(s') = T_a(s+s')`.
    pub fn transvection(a: &LatticeVector, s: i64) -> SympMatrix {
        let genus = a.genus();
        let n = a.rank();
        let row = pairing_row(a);
        let mut m = SympMatrix::identity(genus);
        let s = BigInt::from(s);
        for r in 0..n {
            if a.coords[r].is_zero() {
                continue;
            }
            let scale = &s * &a.coords[r];
            for c in 0..n {
                if row[c].is_zero() {
                    continue;
                }
                m.entries[r * n + c] += &scale * &row[c];
            }
        }
        m
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn dim(&self) -> usize {
        2 * self.genus as usize
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.dim() + col]
    }

    pub fn mul(&self, rhs: &SympMatrix) -> Result<SympMatrix, SymprepError> {
        if self.genus != rhs.genus {
            return Err(SymprepError::GenusMismatch(self.genus, rhs.genus));
        }
        let n = self.dim();
        let mut entries = vec![BigInt::zero(); n * n];
        for r in 0..n {
            for k in 0..n {
                let a = &self.entries[r * n + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = &rhs.entries[k * n + c];
                    if !b.is_zero() {
                        entries[r * n + c] += a * b;
                    }
                }
            }
        }
        Ok(SympMatrix { genus: self.genus, entries })
    }

    /// In-place right multiplication by `T_a(s)`, as a rank-one column update.
    pub fn transvection_update(&mut self, a: &LatticeVector, s: i64) -> Result<(), SymprepError> {
        let n = self.dim();
        if a.rank() != n {
            return Err(SymprepError::RankMismatch(a.rank(), n));
        }
        // (M T)_col_j = M_col_j + s * (a^T J)_j * (M a)
        let ma: Vec<BigInt> = (0..n)
            .map(|r| {
                let mut acc = BigInt::zero();
                for k in 0..n {
                    if !a.coords[k].is_zero() {
                        acc += &self.entries[r * n + k] * &a.coords[k];
                    }
                }
                acc
            })
            .collect();
        let row = pairing_row(a);
        let s = BigInt::from(s);
        for (c, theta) in row.iter().enumerate() {
            if theta.is_zero() {
                continue;
            }
            let scale = &s * theta;
            for r in 0..n {
                if !ma[r].is_zero() {
                    self.entries[r * n + c] += &scale * &ma[r];
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector, SymprepError> {
        let n = self.dim();
        if v.rank() != n {
            return Err(SymprepError::RankMismatch(v.rank(), n));
        }
        let coords = (0..n)
            .map(|r| {
                let mut acc = BigInt::zero();
                for k in 0..n {
                    if !v.coords[k].is_zero() {
                        acc += &self.entries[r * n + k] * &v.coords[k];
                    }
                }
                acc
            })
            .collect();
        Ok(LatticeVector { coords })
    }

    pub fn transpose(&self) -> SympMatrix {
        let n = self.dim();
        let mut entries = vec![BigInt::zero(); n * n];
        for r in 0..n {
            for c in 0..n {
                entries[c * n + r] = self.entries[r * n + c].clone();
            }
        }
        SympMatrix { genus: self.genus, entries }
    }

    pub fn neg(&self) -> SympMatrix {
        SympMatrix {
            genus: self.genus,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    /// `M^T J M`, for the exact symplectic check.
    fn gram(&self) -> SympMatrix {
        let j = SympMatrix::pairing_matrix(self.genus);
        self.transpose().mul(&j).unwrap().mul(self).unwrap()
    }

    /// The pairing matrix `J` itself (it is symplectic: `J^2 = −I`).
    pub fn pairing_matrix(genus: u32) -> SympMatrix {
        let g = genus as usize;
        let n = 2 * g;
        let mut entries = vec![BigInt::zero(); n * n];
        for k in 0..g {
            entries[k * n + (g + k)] = BigInt::one();
            entries[(g + k) * n + k] = -BigInt::one();
        }
        SympMatrix { genus, entries }
    }

    pub fn is_symplectic(&self) -> bool {
        self.gram() == SympMatrix::pairing_matrix(self.genus)
    }

    pub fn is_identity(&self) -> bool {
        *self == SympMatrix::identity(self.genus)
    }

    /// Exact inverse via the symplectic identity `M^{-1} = −J M^T J`.
    pub fn inverse(&self) -> SympMatrix {
        debug_assert!(self.is_symplectic());
        let j = SympMatrix::pairing_matrix(self.genus);
        j.mul(&self.transpose()).unwrap().mul(&j).unwrap().neg()
    }

    pub fn pow(&self, k: u32) -> SympMatrix {
        let mut acc = SympMatrix::identity(self.genus);
        for _ in 0..k {
            acc = acc.mul(self).unwrap();
        }
        acc
    }

    pub fn to_float(&self) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |r, c| self.entries[r * n + c].to_f64().unwrap_or(f64::INFINITY))
    }
}

impl fmt::Display for SympMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        for r in 0..n {
            for c in 0..n {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.entries[r * n + c])?;
            }
            if r + 1 < n {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SympMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SympMatrix(g={})\n{self}", self.genus)
    }
}

/// The homology classes of the hyperelliptic chain curves, `v_1..v_{2g+1}`:
/// consecutive classes pair to ±1, distant ones to 0, matching the type-A
/// adjacency pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainBasis {
    genus: u32,
    classes: Vec<LatticeVector>,
}

impl ChainBasis {
    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The class `v_i`, 1-based, `1 <= i <= 2g+1`.
    pub fn class(&self, index: u32) -> Result<&LatticeVector, SymprepError> {
        if index == 0 || index as usize > self.classes.len() {
            return Err(SymprepError::IndexOutOfRange { index, max: 2 * self.genus + 1 });
        }
        Ok(&self.classes[index as usize - 1])
    }

    pub fn classes(&self) -> &[LatticeVector] {
        &self.classes
    }
}

/// Chain classes: `v_1 = e_1`, `v_{2k} = f_k`, `v_{2k+1} = e_k + e_{k+1}`
/// for `1 <= k <= g−1`, and `v_{2g+1} = e_g`.
pub fn chain_classes(genus: u32) -> ChainBasis {
    assert!(genus >= 1, "genus must be at least 1");
    let mut classes = Vec::with_capacity(2 * genus as usize + 1);
    for index in 1..=2 * genus + 1 {
        let v = if index == 1 {
            LatticeVector::basis_e(1, genus)
        } else if index == 2 * genus + 1 {
            LatticeVector::basis_e(genus, genus)
        } else if index % 2 == 0 {
            LatticeVector::basis_f(index / 2, genus)
        } else {
            let k = (index - 1) / 2;
            LatticeVector::basis_e(k, genus)
                .add(&LatticeVector::basis_e(k + 1, genus))
                .expect("matching rank")
        };
        classes.push(v);
    }
    ChainBasis { genus, classes }
}

/// The symplectic representation: each letter `t_i^{±1}` becomes
/// `T_{v_i}(±1)` and the product is taken in letter order, left factor first.
/// A homomorphism: `sigma(u·v) = sigma(u)·sigma(v)`.
pub fn sigma(word: &BraidWord, genus: u32) -> Result<SympMatrix, SymprepError> {
    let expected = 2 * genus + 2;
    if word.strands() != expected {
        return Err(SymprepError::StrandGenusMismatch {
            strands: word.strands(),
            genus,
            expected,
        });
    }
    let chain = chain_classes(genus);
    let mut m = SympMatrix::identity(genus);
    for letter in word.letters() {
        let class = chain.class(letter.index)?;
        let s = match letter.sign {
            Sign::Plus => 1,
            Sign::Minus => -1,
        };
        m.transvection_update(class, s)?;
    }
    Ok(m)
}

/// Homology class of the conjugated vanishing cycle `w · t_i · w^{-1}`,
/// namely `sigma(w) · v_i`. Conjugating a transvection moves its class:
/// `sigma(w) T_{v}(1) sigma(w)^{-1} = T_{sigma(w) v}(1)`.
pub fn conjugated_class(
    word: &BraidWord,
    index: u32,
    genus: u32,
) -> Result<LatticeVector, SymprepError> {
    let chain = chain_classes(genus);
    let class = chain.class(index)?;
    sigma(word, genus)?.apply(class)
}
