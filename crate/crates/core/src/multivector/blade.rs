use nalgebra::DMatrix;

use super::{re, Multivector, Scalar};
use crate::error::{Error, Result};
use crate::multiindex::{bits_to_indices, concat_sign_bits, full_bits, subsets_of_grade};

/// Relative tolerance for checking that stored vectors reproduce the blade.
const FACTOR_TOL: f64 = 1e-9;

/// A simple multivector, optionally carrying vectors whose wedge is it.
#[derive(Clone, Debug, PartialEq)]
pub struct Blade {
    mv: Multivector,
    vectors: Option<Vec<Vec<Scalar>>>,
}

impl Blade {
    /// Validates simplicity; no factorization is attached.
    pub fn new(mv: Multivector) -> Result<Self> {
        if !crate::grades::is_simple(&mv) {
            return Err(Error::NotSimple);
        }
        Ok(Blade { mv, vectors: None })
    }

    /// `v₁ ∧ … ∧ v_p`.
    pub fn from_vectors(n: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut mv = Multivector::one(n);
        for v in &vectors {
            mv = mv.wedge(&Multivector::from_vector(n, v)?)?;
        }
        Ok(Blade { mv, vectors: Some(vectors) })
    }

    pub fn from_real_vectors(n: usize, vectors: &[Vec<f64>]) -> Result<Self> {
        Self::from_vectors(n, vectors.iter().map(|v| v.iter().map(|&x| re(x)).collect()).collect())
    }

    /// Attaches `vectors` after checking their wedge reproduces `mv`.
    pub fn with_vectors(mv: Multivector, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        let b = Self::from_vectors(mv.dim(), vectors)?;
        let scale = mv.norm().max(1.0);
        if b.mv.distance(&mv)? > FACTOR_TOL * scale {
            return Err(Error::Reconstruction(b.mv.distance(&mv)?));
        }
        Ok(Blade { mv, vectors: b.vectors })
    }

    /// Validates simplicity and computes a factorization from the outer space:
    /// an orthonormal basis with the blade's coefficient folded into the first
    /// vector.
    pub fn factorized(mv: Multivector) -> Result<Self> {
        let b = Self::new(mv)?;
        b.with_factorization()
    }

    pub fn with_factorization(self) -> Result<Self> {
        if self.vectors.is_some() {
            return Ok(self);
        }
        let n = self.mv.dim();
        if self.mv.is_zero() {
            return Err(Error::ZeroInput("blade"));
        }
        let mut cols = crate::spaces::outer_space(&self.mv).into_columns();
        let unit = Blade::from_vectors(n, cols.clone())?;
        let c = unit.mv.inner(&self.mv)?;
        if cols.is_empty() {
            if (c - re(1.0)).norm() > FACTOR_TOL {
                return Err(Error::MissingFactorization);
            }
        } else {
            for x in cols[0].iter_mut() {
                *x *= c;
            }
        }
        Blade::with_vectors(self.mv, cols)
    }

    pub fn mv(&self) -> &Multivector {
        &self.mv
    }

    pub fn into_mv(self) -> Multivector {
        self.mv
    }

    pub fn dim(&self) -> usize {
        self.mv.dim()
    }

    pub fn vectors(&self) -> Option<&[Vec<Scalar>]> {
        self.vectors.as_deref()
    }

    fn require_vectors(&self) -> Result<&[Vec<Scalar>]> {
        self.vectors().ok_or(Error::MissingFactorization)
    }

    /// Grade; for a zero blade with vectors, the number of vectors.
    pub fn grade(&self) -> Option<usize> {
        match &self.vectors {
            Some(v) => Some(v.len()),
            None => self.mv.homogeneous_grade().or(if self.mv.is_zero() { None } else { Some(0) }),
        }
    }

    /// `B_i`: the wedge of the vectors at positions `sel` (bit `k` selects
    /// `v_{k+1}`).
    pub fn subblade(&self, sel: u32) -> Result<Multivector> {
        let vs = self.require_vectors()?;
        let n = self.dim();
        let mut out = Multivector::one(n);
        for k in bits_to_indices(sel) {
            out = out.wedge(&Multivector::from_vector(n, &vs[k - 1])?)?;
        }
        Ok(out)
    }
}

fn inner_vec(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `A⌋B` by determinants: the coefficient of `e_j` is the determinant of the
/// `q × q` matrix whose row `r` is `⟨v₁,w_r⟩ … ⟨v_p,w_r⟩, w_{r,j₁} … w_{r,j_{q−p}}`.
pub fn contract_blades_det(a: &Blade, b: &Blade) -> Result<Multivector> {
    let vs = a.require_vectors()?;
    let ws = b.require_vectors()?;
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::AmbientMismatch(n, b.dim()));
    }
    let (p, q) = (vs.len(), ws.len());
    if p > q {
        return Ok(Multivector::zero(n));
    }
    let gram: Vec<Vec<Scalar>> = ws.iter().map(|w| vs.iter().map(|v| inner_vec(v, w)).collect()).collect();
    let mut terms = Vec::new();
    for j in subsets_of_grade(n, q - p) {
        let idx: Vec<usize> = bits_to_indices(j).collect();
        let m = DMatrix::from_fn(q, q, |r, c| if c < p { gram[r][c] } else { ws[r][idx[c - p] - 1] });
        terms.push((j, m.determinant()));
    }
    Ok(Multivector::from_terms(n, terms))
}

/// Right side of the generalized Leibniz rule for `B⌋(M∧N)`:
/// `Σ_i ε_{ii'} (B_{i'} ⌋ M^(|i|)) ∧ (B_i ⌋ N)`.
pub fn leibniz_rhs(b: &Blade, m: &Multivector, nn: &Multivector) -> Result<Multivector> {
    let p = b.require_vectors()?.len();
    let all = full_bits(p);
    let mut acc = Multivector::zero(b.dim());
    for i in 0..=all {
        let ic = all & !i;
        let sign = concat_sign_bits(i, ic) as f64;
        let left = b.subblade(ic)?.lcontr(&m.grade_involution_pow(i.count_ones() as usize))?;
        let right = b.subblade(i)?.lcontr(nn)?;
        acc = acc.try_add(&left.wedge(&right)?.scale(sign))?;
    }
    Ok(acc)
}

/// `H⌋B = Σ_{i ∈ 𝕀_p^q} ε_{ii'} ⟨H, B_i⟩ B_{i'}` for homogeneous `H` of grade `p`.
pub fn contract_subblade_expansion(h: &Multivector, b: &Blade) -> Result<Multivector> {
    let q = b.require_vectors()?.len();
    let p = h.grade_or(0)?;
    let n = b.dim();
    if p > q {
        return Ok(Multivector::zero(n));
    }
    let all = full_bits(q);
    let mut acc = Multivector::zero(n);
    for i in subsets_of_grade(q.max(1), p).into_iter().filter(|i| i & !all == 0) {
        let ic = all & !i;
        let sign = concat_sign_bits(i, ic) as f64;
        let coef = h.inner(&b.subblade(i)?)?;
        acc = acc.try_add(&b.subblade(ic)?.scale(coef * sign))?;
    }
    Ok(acc)
}
