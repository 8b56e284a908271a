//! Inner, outer, bottom and top grades; simplicity tests.

use crate::error::Result;
use crate::multiindex::{bits_to_indices, pairs_bits, parity_sign, subsets_of_grade};
use crate::multivector::{Multivector, Scalar};
use crate::spaces::{inner_space, outer_space};

/// Cutoff for the simplicity residuals, relative to `‖H‖²`.
pub const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GradeProfile {
    pub inner: usize,
    pub outer: usize,
    pub bottom: Option<usize>,
    pub top: Option<usize>,
}

pub fn grade_profile(m: &Multivector) -> GradeProfile {
    let grades = m.grades();
    GradeProfile {
        inner: inner_space(m).dim(),
        outer: outer_space(m).dim(),
        bottom: grades.first().copied(),
        top: grades.last().copied(),
    }
}

/// `isp M = osp M`; zero and scalars count as simple.
pub fn is_simple(m: &Multivector) -> bool {
    if m.len() <= 1 {
        return true;
    }
    inner_space(m).dim() == outer_space(m).dim()
}

/// `max_j ‖(e_j⌋H)∧H‖ / ‖H‖²` over `j` of grade `p−1`.
pub fn cartan_residual(h: &Multivector) -> Result<f64> {
    let n = h.dim();
    let p = h.grade_or(0)?;
    if h.is_zero() || p == 0 {
        return Ok(0.0);
    }
    let nsq = h.norm_sqr();
    let mut worst: f64 = 0.0;
    for j in subsets_of_grade(n, p - 1) {
        let f = Multivector::basis_bits(n, j, Scalar::new(1.0, 0.0));
        let r = f.lcontr(h)?.wedge(h)?.norm() / nsq;
        worst = worst.max(r);
    }
    Ok(worst)
}

/// A single Plücker relation evaluated at `(j, k)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PluckerResidual {
    pub j: u32,
    pub k: u32,
    pub value: Scalar,
}

/// `Σ_{i∈k−j} (−1)^{⟨j|i⟩+⟨k|i⟩} λ_{j∪i} λ_{k−i}` for every `j` of grade
/// `p−1` and `k` of grade `p+1`.
pub fn plucker_residuals(h: &Multivector) -> Result<Vec<PluckerResidual>> {
    let n = h.dim();
    let p = h.grade_or(0)?;
    let mut out = Vec::new();
    if p == 0 || p >= n {
        return Ok(out);
    }
    let ks = subsets_of_grade(n, p + 1);
    for j in subsets_of_grade(n, p - 1) {
        for &k in &ks {
            let mut value = Scalar::new(0.0, 0.0);
            for i in bits_to_indices(k & !j) {
                let ib = 1u32 << (i - 1);
                let s = parity_sign(pairs_bits(j, ib) + pairs_bits(k, ib)) as f64;
                value += h.coeff(j | ib) * h.coeff(k & !ib) * s;
            }
            out.push(PluckerResidual { j, k, value });
        }
    }
    Ok(out)
}

/// Largest `|residual| / ‖H‖²` of the Plücker relations.
pub fn plucker_worst(h: &Multivector) -> Result<f64> {
    let nsq = h.norm_sqr();
    if nsq == 0.0 {
        return Ok(0.0);
    }
    Ok(plucker_residuals(h)?.iter().map(|r| r.value.norm()).fold(0.0, f64::max) / nsq)
}
