//! Linear algebra over GF(2) on a fixed edge universe `0..len`.
//!
//! Vectors are dense bitsets packed into 64-bit words. Subspaces are kept in
//! reduced row-echelon form, so two subspaces are equal exactly when their
//! bases are equal. Linear operators are stored column-wise: column `x` is the
//! image of the singleton `{x}`.

use std::fmt;
use std::ops::{BitXor, BitXorAssign};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("universe mismatch: {left} vs {right}")]
    UniverseMismatch { left: usize, right: usize },
    #[error("index {index} out of range for universe of size {len}")]
    OutOfRange { index: usize, len: usize },
}

fn check_len(left: usize, right: usize) -> Result<(), Gf2Error> {
    if left == right {
        Ok(())
    } else {
        Err(Gf2Error::UniverseMismatch { left, right })
    }
}

/// A subset of the edge universe, viewed as a vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vec {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn singleton(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    /// Builds the vector with the given bits set. Repeated indices cancel.
    pub fn from_indices<I: IntoIterator<Item = usize>>(
        len: usize,
        indices: I,
    ) -> Result<Self, Gf2Error> {
        let mut v = Self::zeros(len);
        for i in indices {
            if i >= len {
                return Err(Gf2Error::OutOfRange { index: i, len });
            }
            v.toggle(i);
        }
        Ok(v)
    }

    /// Builds a vector from a bit string such as `"101"` (index 0 first).
    pub fn from_bits(bits: &str) -> Self {
        let chars: Vec<char> = bits.chars().filter(|c| !c.is_whitespace()).collect();
        let mut v = Self::zeros(chars.len());
        for (i, c) in chars.into_iter().enumerate() {
            if c == '1' {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    /// Set bits in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + bit)
            })
        })
    }

    /// Symmetric difference.
    pub fn add(&self, other: &Self) -> Result<Self, Gf2Error> {
        check_len(self.len, other.len)?;
        let mut out = self.clone();
        out.xor_words(other);
        Ok(out)
    }

    /// Parity of `|self ∩ other|`.
    pub fn bilinear_form(&self, other: &Self) -> Result<bool, Gf2Error> {
        check_len(self.len, other.len)?;
        Ok(self.dot(other))
    }

    fn dot(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    fn xor_words(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// 1-based edge ids, the convention used in files and human output.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.ones().map(|i| i + 1).collect()
    }
}

impl BitXorAssign<&Gf2Vec> for Gf2Vec {
    /// Panics on universe mismatch; use [`Gf2Vec::add`] for a checked sum.
    fn bitxor_assign(&mut self, rhs: &Gf2Vec) {
        assert_eq!(self.len, rhs.len, "GF(2) universe mismatch");
        self.xor_words(rhs);
    }
}

impl BitXor<&Gf2Vec> for &Gf2Vec {
    type Output = Gf2Vec;

    fn bitxor(self, rhs: &Gf2Vec) -> Gf2Vec {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl fmt::Debug for Gf2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.ones().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}/{}", self.len)
    }
}

/// Displays the set with 1-based ids, e.g. `{1,2,6,7}`.
impl fmt::Display for Gf2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.ones().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// A subspace of GF(2)^len in reduced row-echelon form.
///
/// Rows are nonzero, sorted by pivot (lowest set bit), and every pivot column
/// is zero in all other rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Subspace {
    len: usize,
    rows: Vec<Gf2Vec>,
    pivots: Vec<usize>,
}

impl Gf2Subspace {
    pub fn zero(len: usize) -> Self {
        Self {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::zero(len);
        for i in 0..len {
            s.insert(Gf2Vec::singleton(len, i));
        }
        s
    }

    pub fn span<'a, I>(len: usize, vectors: I) -> Result<Self, Gf2Error>
    where
        I: IntoIterator<Item = &'a Gf2Vec>,
    {
        let mut s = Self::zero(len);
        for v in vectors {
            check_len(len, v.len)?;
            s.insert(v.clone());
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Gf2Vec] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    fn reduce(&self, v: &mut Gf2Vec) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                *v ^= row;
            }
        }
    }

    /// Adds `v` to the spanning set. Returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Gf2Vec) -> bool {
        assert_eq!(v.len, self.len, "GF(2) universe mismatch");
        self.reduce(&mut v);
        let Some(p) = v.first_one() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(p) {
                *row ^= &v;
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn contains(&self, v: &Gf2Vec) -> Result<bool, Gf2Error> {
        check_len(self.len, v.len)?;
        let mut w = v.clone();
        self.reduce(&mut w);
        Ok(w.is_zero())
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool, Gf2Error> {
        check_len(self.len, other.len)?;
        for row in &self.rows {
            if !other.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First basis vector of `self` outside `other`, if any.
    pub fn witness_outside(&self, other: &Self) -> Result<Option<Gf2Vec>, Gf2Error> {
        check_len(self.len, other.len)?;
        for row in &self.rows {
            if !other.contains(row)? {
                return Ok(Some(row.clone()));
            }
        }
        Ok(None)
    }

    pub fn sum(&self, other: &Self) -> Result<Self, Gf2Error> {
        check_len(self.len, other.len)?;
        let mut s = self.clone();
        for row in &other.rows {
            s.insert(row.clone());
        }
        Ok(s)
    }

    /// `U ∩ W = (U⊥ + W⊥)⊥`.
    pub fn intersect(&self, other: &Self) -> Result<Self, Gf2Error> {
        check_len(self.len, other.len)?;
        let comps = self.orth_complement().sum(&other.orth_complement())?;
        Ok(comps.orth_complement())
    }

    /// The vectors orthogonal to every basis row, i.e. the null space of the
    /// basis matrix.
    pub fn orth_complement(&self) -> Self {
        let mut out = Self::zero(self.len);
        let mut is_pivot = vec![false; self.len];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.len).filter(|&j| !is_pivot[j]) {
            let mut v = Gf2Vec::singleton(self.len, free);
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            out.insert(v);
        }
        out
    }
}

impl fmt::Debug for Gf2Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Gf2Subspace")
            .field("len", &self.len)
            .field("basis", &self.rows)
            .finish()
    }
}

/// A linear map GF(2)^len → GF(2)^len given by its columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearOp {
    len: usize,
    columns: Vec<Gf2Vec>,
}

impl LinearOp {
    pub fn from_columns(columns: Vec<Gf2Vec>) -> Result<Self, Gf2Error> {
        let len = columns.len();
        for c in &columns {
            check_len(len, c.len)?;
        }
        Ok(Self { len, columns })
    }

    pub fn identity(len: usize) -> Self {
        Self {
            len,
            columns: (0..len).map(|i| Gf2Vec::singleton(len, i)).collect(),
        }
    }

    pub fn zero(len: usize) -> Self {
        Self {
            len,
            columns: vec![Gf2Vec::zeros(len); len],
        }
    }

    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn column(&self, x: usize) -> &Gf2Vec {
        &self.columns[x]
    }

    pub fn columns(&self) -> &[Gf2Vec] {
        &self.columns
    }

    /// Entry in row `i`, column `j`.
    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.columns[j].get(i)
    }

    pub fn apply(&self, v: &Gf2Vec) -> Result<Gf2Vec, Gf2Error> {
        check_len(self.len, v.len)?;
        let mut out = Gf2Vec::zeros(self.len);
        for x in v.ones() {
            out ^= &self.columns[x];
        }
        Ok(out)
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self, Gf2Error> {
        check_len(outer.len, inner.len)?;
        let columns = inner
            .columns
            .iter()
            .map(|c| outer.apply(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            len: outer.len,
            columns,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, Gf2Error> {
        check_len(self.len, other.len)?;
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(Self {
            len: self.len,
            columns,
        })
    }

    pub fn transpose(&self) -> Self {
        let mut columns = vec![Gf2Vec::zeros(self.len); self.len];
        for (j, col) in self.columns.iter().enumerate() {
            for i in col.ones() {
                columns[i].set(j, true);
            }
        }
        Self {
            len: self.len,
            columns,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.len)
    }

    pub fn image(&self) -> Gf2Subspace {
        let mut s = Gf2Subspace::zero(self.len);
        for c in &self.columns {
            s.insert(c.clone());
        }
        s
    }

    /// `Ker T` is the orthogonal complement of the row space of `T`.
    pub fn kernel(&self) -> Gf2Subspace {
        let t = self.transpose();
        t.image().orth_complement()
    }

    pub fn rank(&self) -> usize {
        self.image().dim()
    }
}

impl fmt::Debug for LinearOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinearOp")
            .field("len", &self.len)
            .field("columns", &self.columns)
            .finish()
    }
}
