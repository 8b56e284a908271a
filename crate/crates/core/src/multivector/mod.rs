//! Sparse multivectors in a fixed orthonormal basis.

mod blade;
mod convention;

pub use blade::{contract_blades_det, contract_subblade_expansion, leibniz_rhs, Blade};
pub use convention::{convention_contract, Convention};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::multiindex::{check_dim, concat_sign_bits, full_bits, graded_lex_cmp, IndexSeq, MultiIndex};

pub type Scalar = Complex64;

/// Default absolute cutoff below which coefficients are dropped.
pub const DEFAULT_TOL: f64 = 1e-12;

#[inline]
pub fn re(x: f64) -> Scalar {
    Scalar::new(x, 0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Involution {
    /// `(-1)^p`
    Grade,
    /// `(-1)^{p(p-1)/2}`
    Reversion,
    /// `(-1)^{p(p+1)/2}`
    Clifford,
    /// `n + 1` grade involutions.
    Check,
}

impl Involution {
    pub fn sign(self, p: usize, n: usize) -> f64 {
        let odd = match self {
            Involution::Grade => p % 2 == 1,
            Involution::Reversion => (p * p.saturating_sub(1) / 2) % 2 == 1,
            Involution::Clifford => (p * (p + 1) / 2) % 2 == 1,
            Involution::Check => (p * (n + 1)) % 2 == 1,
        };
        if odd {
            -1.0
        } else {
            1.0
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Multivector {
    n: usize,
    terms: BTreeMap<u32, Scalar>,
    tol: f64,
}

impl Multivector {
    pub fn zero(n: usize) -> Self {
        assert!(check_dim(n).is_ok(), "bad ambient dimension {n}");
        Multivector { n, terms: BTreeMap::new(), tol: DEFAULT_TOL }
    }

    pub fn scalar(n: usize, s: impl Into<Scalar>) -> Self {
        Self::basis_bits(n, 0, s.into())
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, 1.0)
    }

    /// `s · e_bits`.
    pub fn basis_bits(n: usize, bits: u32, s: Scalar) -> Self {
        let mut m = Self::zero(n);
        assert!(bits & !full_bits(n) == 0, "basis bits outside dimension {n}");
        m.insert(bits, s);
        m
    }

    pub fn basis(idx: MultiIndex) -> Self {
        Self::basis_bits(idx.ambient(), idx.bits(), re(1.0))
    }

    /// `e_{i₁…i_k}` for a possibly unsorted sequence; `ε_r` fixes the sign and
    /// repeats give zero.
    pub fn e(n: usize, indices: &[usize]) -> Result<Self> {
        let seq = IndexSeq::new(indices.to_vec(), n)?;
        match seq.sorted() {
            Some(mi) => Ok(Self::basis_bits(n, mi.bits(), re(seq.epsilon() as f64))),
            None => Ok(Self::zero(n)),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, Scalar)>>(n: usize, terms: I) -> Self {
        Self::from_terms_tol(n, DEFAULT_TOL, terms)
    }

    /// [`from_terms`](Self::from_terms) with a custom pruning cutoff.
    pub fn from_terms_tol<I: IntoIterator<Item = (u32, Scalar)>>(n: usize, tol: f64, terms: I) -> Self {
        let mut m = Self::zero(n);
        m.tol = tol;
        for (b, c) in terms {
            assert!(b & !full_bits(n) == 0, "basis bits outside dimension {n}");
            *m.terms.entry(b).or_insert(Scalar::new(0.0, 0.0)) += c;
        }
        m.prune();
        m
    }

    /// Grade-1 multivector `Σ coords_i e_i`.
    pub fn from_vector(n: usize, coords: &[Scalar]) -> Result<Self> {
        check_dim(n)?;
        if coords.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: coords.len() });
        }
        Ok(Self::from_terms(n, coords.iter().enumerate().map(|(k, c)| (1u32 << k, *c))))
    }

    pub fn from_real_vector(coords: &[f64]) -> Result<Self> {
        let c: Vec<Scalar> = coords.iter().map(|&x| re(x)).collect();
        Self::from_vector(coords.len(), &c)
    }

    /// Coordinates of the grade-1 part.
    pub fn to_vector(&self) -> Vec<Scalar> {
        (0..self.n).map(|k| self.coeff(1 << k)).collect()
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self.prune();
        self
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in bitset order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, Scalar)> + '_ {
        self.terms.iter().map(|(b, c)| (*b, *c))
    }

    /// Terms ordered by grade, then lexicographically by index list.
    pub fn sorted_terms(&self) -> Vec<(u32, Scalar)> {
        let mut v: Vec<(u32, Scalar)> = self.terms().collect();
        v.sort_by(|a, b| graded_lex_cmp(a.0, b.0));
        v
    }

    pub fn coeff(&self, bits: u32) -> Scalar {
        self.terms.get(&bits).copied().unwrap_or_default()
    }

    pub fn scalar_part(&self) -> Scalar {
        self.coeff(0)
    }

    fn insert(&mut self, bits: u32, c: Scalar) {
        if c.norm() > self.tol {
            self.terms.insert(bits, c);
        } else {
            self.terms.remove(&bits);
        }
    }

    fn prune(&mut self) {
        let tol = self.tol;
        self.terms.retain(|_, c| c.norm() > tol);
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            Err(Error::AmbientMismatch(self.n, other.n))
        } else {
            Ok(())
        }
    }

    fn map_coeffs(&self, f: impl Fn(u32, Scalar) -> Scalar) -> Self {
        let mut m = Multivector { n: self.n, terms: BTreeMap::new(), tol: self.tol };
        for (b, c) in self.terms() {
            m.insert(b, f(b, c));
        }
        m
    }

    fn combine(&self, other: &Self, f: impl Fn(Scalar, Scalar) -> Scalar) -> Result<Self> {
        self.same_dim(other)?;
        let mut terms = self.terms.clone();
        for (b, c) in other.terms() {
            let e = terms.entry(b).or_default();
            *e = f(*e, c);
        }
        for (b, e) in terms.iter_mut() {
            if !other.terms.contains_key(b) {
                *e = f(*e, Scalar::default());
            }
        }
        let mut m = Multivector { n: self.n, terms, tol: self.tol };
        m.prune();
        Ok(m)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a - b)
    }

    pub fn scale(&self, s: impl Into<Scalar>) -> Self {
        let s = s.into();
        self.map_coeffs(|_, c| c * s)
    }

    /// Complex conjugate of every coefficient.
    pub fn conj(&self) -> Self {
        self.map_coeffs(|_, c| c.conj())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `‖self − other‖`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.same_dim(other)?;
        let mut s = 0.0;
        for (b, c) in self.terms() {
            s += (c - other.coeff(b)).norm_sqr();
        }
        for (b, c) in other.terms() {
            if !self.terms.contains_key(&b) {
                s += c.norm_sqr();
            }
        }
        Ok(s.sqrt())
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.distance(other).map(|d| d <= tol).unwrap_or(false)
    }

    /// Sesquilinear inner product, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Result<Scalar> {
        self.same_dim(other)?;
        let (small, large, flip) = if self.len() <= other.len() { (self, other, false) } else { (other, self, true) };
        let mut s = Scalar::default();
        for (b, c) in small.terms() {
            if let Some(d) = large.terms.get(&b) {
                s += if flip { c * d.conj() } else { c.conj() * d };
            }
        }
        Ok(s)
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                let s = concat_sign_bits(i, j);
                if s != 0 {
                    *acc.entry(i | j).or_default() += a * b * s as f64;
                }
            }
        }
        let mut m = Multivector { n: self.n, terms: acc, tol: self.tol };
        m.prune();
        Ok(m)
    }

    /// Left contraction `self ⌋ other` (`self` is the contractor).
    pub fn lcontr(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                if i & !j == 0 {
                    let k = j & !i;
                    let s = concat_sign_bits(i, k) as f64;
                    *acc.entry(k).or_default() += a.conj() * b * s;
                }
            }
        }
        let mut m = Multivector { n: self.n, terms: acc, tol: self.tol };
        m.prune();
        Ok(m)
    }

    /// Right contraction `self ⌟ other` (`other` is the contractor).
    pub fn rcontr(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (j, b) in self.terms() {
            for (i, a) in other.terms() {
                if i & !j == 0 {
                    let k = j & !i;
                    let s = concat_sign_bits(k, i) as f64;
                    *acc.entry(k).or_default() += b * a.conj() * s;
                }
            }
        }
        let mut m = Multivector { n: self.n, terms: acc, tol: self.tol };
        m.prune();
        Ok(m)
    }

    pub fn involution(&self, kind: Involution) -> Self {
        let n = self.n;
        self.map_coeffs(|b, c| c * kind.sign(b.count_ones() as usize, n))
    }

    pub fn grade_involution(&self) -> Self {
        self.involution(Involution::Grade)
    }

    pub fn reversion(&self) -> Self {
        self.involution(Involution::Reversion)
    }

    pub fn clifford_conjugate(&self) -> Self {
        self.involution(Involution::Clifford)
    }

    pub fn check(&self) -> Self {
        self.involution(Involution::Check)
    }

    /// `k` successive grade involutions.
    pub fn grade_involution_pow(&self, k: usize) -> Self {
        if k.is_multiple_of(2) {
            self.clone()
        } else {
            self.grade_involution()
        }
    }

    /// `⟨M⟩_p`; zero for `p` outside `0..=n`.
    pub fn grade_project(&self, p: isize) -> Self {
        if p < 0 {
            return Self::zero(self.n).with_tol(self.tol);
        }
        let p = p as u32;
        let mut m = Multivector { n: self.n, terms: BTreeMap::new(), tol: self.tol };
        m.terms = self.terms.iter().filter(|(b, _)| b.count_ones() == p).map(|(b, c)| (*b, *c)).collect();
        m
    }

    /// Grades carrying at least one stored term, ascending.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.keys().map(|b| b.count_ones() as usize).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// The common grade of all terms; `None` for zero or mixed grades.
    pub fn homogeneous_grade(&self) -> Option<usize> {
        match self.grades().as_slice() {
            [p] => Some(*p),
            _ => None,
        }
    }

    /// Like [`homogeneous_grade`](Self::homogeneous_grade) but treats zero as
    /// homogeneous of grade `default`.
    pub fn grade_or(&self, default: usize) -> Result<usize> {
        if self.is_zero() {
            return Ok(default);
        }
        self.homogeneous_grade().ok_or(Error::NotHomogeneous)
    }

    /// Even and odd parts.
    pub fn parity_split(&self) -> (Self, Self) {
        let even = self.map_coeffs(|b, c| if b.count_ones() % 2 == 0 { c } else { Scalar::default() });
        let odd = self.map_coeffs(|b, c| if b.count_ones() % 2 == 1 { c } else { Scalar::default() });
        (even, odd)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Whether every coefficient is real (within `tol`).
    pub fn is_real(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }
}

impl Add<&Multivector> for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        self.try_add(rhs).expect("ambient dimension mismatch")
    }
}

impl Sub<&Multivector> for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self.try_sub(rhs).expect("ambient dimension mismatch")
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(self, rhs: Multivector) -> Multivector {
        &self + &rhs
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(self, rhs: Multivector) -> Multivector {
        &self - &rhs
    }
}

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        *self = &*self + rhs;
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul<Scalar> for &Multivector {
    type Output = Multivector;
    fn mul(self, s: Scalar) -> Multivector {
        self.scale(s)
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, s: f64) -> Multivector {
        self.scale(s)
    }
}

/// Free-function forms matching `M⌋N` and `N⌟M`.
pub fn contract_left(m: &Multivector, n: &Multivector) -> Result<Multivector> {
    m.lcontr(n)
}

pub fn contract_right(n: &Multivector, m: &Multivector) -> Result<Multivector> {
    n.rcontr(m)
}

fn fmt_real(x: f64) -> String {
    let r = x.round();
    if (x - r).abs() < 1e-12 * x.abs().max(1.0) {
        format!("{}", r as i64)
    } else {
        format!("{x}")
    }
}

/// Coefficient text: `3`, `-0.5`, `2i`, `(2+1i)`.
pub fn format_scalar(c: Scalar) -> String {
    let small = |x: f64| x.abs() < 1e-12;
    if small(c.im) {
        fmt_real(c.re)
    } else if small(c.re) {
        format!("{}i", fmt_real(c.im))
    } else {
        let im = fmt_real(c.im);
        if let Some(abs) = im.strip_prefix('-') {
            format!("({}-{}i)", fmt_real(c.re), abs)
        } else {
            format!("({}+{}i)", fmt_real(c.re), im)
        }
    }
}

impl fmt::Display for Multivector {
    /// Prints a sum re-readable by the CLI parser, e.g. `-2*e1 + e2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (b, c)) in terms.iter().enumerate() {
            let real = c.im.abs() < 1e-12;
            let (neg, mag) = if real && c.re < 0.0 { (true, -*c) } else { (false, *c) };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let coeff = format_scalar(mag);
            let label = crate::multiindex::basis_label(*b);
            if *b == 0 {
                f.write_str(&coeff)?;
            } else if coeff == "1" {
                f.write_str(&label)?;
            } else {
                write!(f, "{coeff}*{label}")?;
            }
        }
        Ok(())
    }
}
