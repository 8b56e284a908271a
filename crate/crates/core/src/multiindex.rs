//! Multi-indices coded as bitsets, plus the permutation-sign combinatorics
//! used everywhere else.
//!
//! Indices are 1-based in the public API; bit `i - 1` marks index `i`.
//! Signs are returned as `i8` in `{-1, 0, 1}`, where `0` flags a repeated
//! index (so the corresponding blade product vanishes).

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 16;

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        Err(Error::BadDimension(n))
    } else {
        Ok(())
    }
}

/// Bitmask with the lowest `n` bits set.
#[inline]
pub fn full_bits(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Number of pairs `(a, b)` with `a` in `a_bits`, `b` in `b_bits` and `a > b`.
#[inline]
pub fn pairs_bits(a_bits: u32, b_bits: u32) -> u32 {
    let mut count = 0;
    let mut rest = b_bits;
    while rest != 0 {
        let low = rest.trailing_zeros();
        count += a_bits.checked_shr(low + 1).unwrap_or(0).count_ones();
        rest &= rest - 1;
    }
    count
}

#[inline]
pub fn parity_sign(k: u32) -> i8 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign of the concatenation `ij` of two increasing multi-indices; 0 on overlap.
#[inline]
pub fn concat_sign_bits(i: u32, j: u32) -> i8 {
    if i & j != 0 {
        0
    } else {
        parity_sign(pairs_bits(i, j))
    }
}

/// Iterator over the set indices (1-based, ascending) of a bitset.
pub fn bits_to_indices(bits: u32) -> impl Iterator<Item = usize> {
    let mut rest = bits;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let low = rest.trailing_zeros();
            rest &= rest - 1;
            Some(low as usize + 1)
        }
    })
}

/// Lexicographic order of the ascending index lists of two bitsets
/// (a proper prefix sorts first).
pub fn lex_cmp(a: u32, b: u32) -> Ordering {
    bits_to_indices(a).cmp(bits_to_indices(b))
}

/// Grade first, then lexicographic.
pub fn graded_lex_cmp(a: u32, b: u32) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| lex_cmp(a, b))
}

/// All subsets of `{1..n}` of grade `p`, in lexicographic order.
pub fn subsets_of_grade(n: usize, p: usize) -> Vec<u32> {
    let mut out: Vec<u32> = (0..=full_bits(n)).filter(|b| b.count_ones() as usize == p).collect();
    out.sort_by(|a, b| lex_cmp(*a, *b));
    out
}

/// `ζ_k = (-1)^{k(k+1)/2}`.
pub fn zeta(k: usize) -> i8 {
    parity_sign(((k * (k + 1) / 2) % 2) as u32)
}

/// An increasing multi-index, i.e. a subset of `{1..n}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    bits: u32,
    n: u8,
}

impl MultiIndex {
    pub fn from_bits(bits: u32, n: usize) -> Result<Self> {
        check_dim(n)?;
        if bits & !full_bits(n) != 0 {
            let top = 32 - bits.leading_zeros() as usize;
            return Err(Error::IndexOutOfRange { index: top, n });
        }
        Ok(MultiIndex { bits, n: n as u8 })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::from_bits(0, n)
    }

    /// Builds the set of the given indices; order and repeats are ignored.
    pub fn from_indices(indices: &[usize], n: usize) -> Result<Self> {
        check_dim(n)?;
        let mut bits = 0u32;
        for &i in indices {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            bits |= 1 << (i - 1);
        }
        Ok(MultiIndex { bits, n: n as u8 })
    }

    #[inline]
    pub fn bits(&self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.n as usize
    }

    pub fn indices(&self) -> Vec<usize> {
        bits_to_indices(self.bits).collect()
    }

    #[inline]
    pub fn grade(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Sum of the indices.
    pub fn norm(&self) -> usize {
        bits_to_indices(self.bits).sum()
    }

    /// `ξ_i = (-1)^{‖i‖}`.
    pub fn xi(&self) -> i8 {
        parity_sign((self.norm() % 2) as u32)
    }

    pub fn complement(&self) -> Self {
        MultiIndex { bits: !self.bits & full_bits(self.ambient()), n: self.n }
    }

    pub fn union(&self, other: &Self) -> Self {
        MultiIndex { bits: self.bits | other.bits, n: self.n.max(other.n) }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        MultiIndex { bits: self.bits & other.bits, n: self.n.max(other.n) }
    }

    /// `self - other`: drop the indices of `other`.
    pub fn difference(&self, other: &Self) -> Self {
        MultiIndex { bits: self.bits & !other.bits, n: self.n.max(other.n) }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits & other.bits == 0
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    /// `ε_{ij}`; 0 when `i` and `j` overlap.
    pub fn epsilon_concat(&self, other: &Self) -> i8 {
        concat_sign_bits(self.bits, other.bits)
    }

    pub fn to_seq(&self) -> IndexSeq {
        IndexSeq { seq: self.indices(), n: self.ambient() }
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiIndex({:?}, n={})", self.indices(), self.n)
    }
}

/// Basis-blade label: `e124`, `e{3,10}` when some index exceeds 9, `1` for
/// the empty index.
pub fn basis_label(bits: u32) -> String {
    if bits == 0 {
        return "1".to_string();
    }
    let idx: Vec<usize> = bits_to_indices(bits).collect();
    if idx.iter().all(|&i| i <= 9) {
        let digits: String = idx.iter().map(|i| i.to_string()).collect();
        format!("e{digits}")
    } else {
        let list: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
        format!("e{{{}}}", list.join(","))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&basis_label(self.bits))
    }
}

/// A finite sequence of indices in `1..=n`; repeats and any order allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexSeq {
    seq: Vec<usize>,
    n: usize,
}

impl IndexSeq {
    pub fn new(seq: Vec<usize>, n: usize) -> Result<Self> {
        check_dim(n)?;
        if let Some(&bad) = seq.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::IndexOutOfRange { index: bad, n });
        }
        Ok(IndexSeq { seq, n })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.seq
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn is_non_repeating(&self) -> bool {
        let mut seen = 0u32;
        for &i in &self.seq {
            let b = 1u32 << (i - 1);
            if seen & b != 0 {
                return false;
            }
            seen |= b;
        }
        true
    }

    /// Concatenation `rs`.
    pub fn concat(&self, other: &IndexSeq) -> IndexSeq {
        let mut seq = self.seq.clone();
        seq.extend_from_slice(&other.seq);
        IndexSeq { seq, n: self.n.max(other.n) }
    }

    pub fn epsilon(&self) -> i8 {
        epsilon(&self.seq)
    }

    pub fn xi(&self) -> i8 {
        xi(&self.seq)
    }

    /// The increasing multi-index `⟨r⟩` with the same elements, or `None`
    /// when the sequence repeats an index.
    pub fn sorted(&self) -> Option<MultiIndex> {
        if !self.is_non_repeating() {
            return None;
        }
        MultiIndex::from_indices(&self.seq, self.n).ok()
    }
}

impl fmt::Display for IndexSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.seq.iter().all(|&i| i <= 9) {
            for i in &self.seq {
                write!(f, "{i}")?;
            }
            Ok(())
        } else {
            let list: Vec<String> = self.seq.iter().map(|i| i.to_string()).collect();
            write!(f, "{{{}}}", list.join(","))
        }
    }
}

/// Pairs `(a, b)` with `a` in `r`, `b` in `s`, `a > b`, counted with multiplicity.
pub fn pairs(r: &[usize], s: &[usize]) -> usize {
    r.iter().map(|a| s.iter().filter(|b| a > b).count()).sum()
}

/// Sign of the permutation sorting `r`; 0 if `r` repeats an index.
pub fn epsilon(r: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for (k, a) in r.iter().enumerate() {
        for b in &r[k + 1..] {
            match a.cmp(b) {
                Ordering::Greater => inversions += 1,
                Ordering::Equal => return 0,
                Ordering::Less => {}
            }
        }
    }
    parity_sign((inversions % 2) as u32)
}

/// `ξ_r = (-1)^{‖r‖}`.
pub fn xi(r: &[usize]) -> i8 {
    parity_sign((r.iter().sum::<usize>() % 2) as u32)
}
