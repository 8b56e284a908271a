//! Dense complex linear algebra on coordinate vectors, backed by nalgebra.

use nalgebra::DMatrix;

use crate::multivector::Scalar;

pub type CMat = DMatrix<Scalar>;

/// Relative singular-value cutoff for rank decisions.
pub const RANK_TOL: f64 = 1e-9;

pub fn vinner(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn vnorm(a: &[Scalar]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub fn columns_to_matrix(cols: &[Vec<Scalar>], n: usize) -> CMat {
    CMat::from_fn(n, cols.len(), |r, c| cols[c][r])
}

pub fn matrix_columns(m: &CMat) -> Vec<Vec<Scalar>> {
    (0..m.ncols()).map(|c| m.column(c).iter().copied().collect()).collect()
}

/// Thin SVD of an `r × c` matrix with `r ≥ c`, by one-sided Jacobi sweeps.
/// Returns the singular values (descending), the rotated columns `A V` (so
/// column `k` is `σ_k u_k`), and the unitary `V`.
///
/// nalgebra's complex SVD can return inaccurate singular vectors for
/// rank-deficient input, which breaks the subspace computations here.
fn jacobi(a: &CMat) -> (Vec<f64>, CMat, CMat) {
    let c = a.ncols();
    let mut w = a.clone();
    let mut v = CMat::identity(c, c);
    // Columns this small are numerically zero; rotating them only amplifies
    // rounding.
    let negligible = 1e-28 * a.norm_squared();
    for _ in 0..60 {
        let mut rotated = false;
        for p in 0..c {
            for q in p + 1..c {
                let alpha = w.column(p).norm_squared();
                let beta = w.column(q).norm_squared();
                let gamma = w.column(p).dotc(&w.column(q));
                let g = gamma.norm();
                if alpha.min(beta) <= negligible || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for m in [&mut w, &mut v] {
                    for r in 0..m.nrows() {
                        let x = m[(r, p)];
                        let y = m[(r, q)];
                        m[(r, p)] = x * cs - y * phase.conj() * sn;
                        m[(r, q)] = x * phase * sn + y * cs;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = (0..c).map(|k| w.column(k).norm()).collect();
    let mut order: Vec<usize> = (0..c).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let sv = order.iter().map(|&k| norms[k]).collect();
    let w = CMat::from_fn(a.nrows(), c, |r, k| w[(r, order[k])]);
    let v = CMat::from_fn(c, c, |r, k| v[(r, order[k])]);
    (sv, w, v)
}

/// Singular values (descending) and the matching full set of right singular
/// vectors (as columns of a `c × c` matrix) of an `r × c` matrix.
pub fn svd_right(a: &CMat) -> (Vec<f64>, CMat) {
    let c = a.ncols();
    if c == 0 {
        return (Vec::new(), CMat::zeros(0, 0));
    }
    let padded = if a.nrows() < c {
        let mut p = CMat::zeros(c, c);
        p.view_mut((0, 0), (a.nrows(), c)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let (sv, _, v) = jacobi(&padded);
    (sv, v)
}

/// Singular triples `(σ_k, u_k, v_k)` of `A` with `σ_k > 0`, descending.
pub fn svd_pairs(a: &CMat) -> Vec<(f64, Vec<Scalar>, Vec<Scalar>)> {
    if a.nrows() < a.ncols() {
        return svd_pairs(&a.adjoint()).into_iter().map(|(s, u, v)| (s, v, u)).collect();
    }
    let (sv, w, v) = jacobi(a);
    (0..sv.len())
        .filter(|&k| sv[k] > 0.0)
        .map(|k| {
            let u = w.column(k).iter().map(|x| x / sv[k]).collect();
            (sv[k], u, v.column(k).iter().copied().collect())
        })
        .collect()
}

/// Orthonormal basis of `{x : A x = 0}`.
pub fn null_space(a: &CMat, rel_tol: f64) -> Vec<Vec<Scalar>> {
    let (sv, v) = svd_right(a);
    let top = sv.first().copied().unwrap_or(0.0);
    (0..sv.len())
        .filter(|&k| top == 0.0 || sv[k] <= rel_tol * top)
        .map(|k| v.column(k).iter().copied().collect())
        .collect()
}

/// Orthonormal basis of the span of `cols` (vectors in `Cⁿ`).
pub fn orthonormal_span(cols: &[Vec<Scalar>], n: usize, rel_tol: f64) -> Vec<Vec<Scalar>> {
    if cols.is_empty() {
        return Vec::new();
    }
    let pairs = svd_pairs(&columns_to_matrix(cols, n));
    let top = pairs.first().map_or(0.0, |p| p.0);
    pairs.into_iter().filter(|p| p.0 > rel_tol * top).map(|p| p.1).collect()
}

/// Orthonormal basis of the orthogonal complement of the span of an
/// orthonormal list.
pub fn orth_complement(basis: &[Vec<Scalar>], n: usize) -> Vec<Vec<Scalar>> {
    if basis.is_empty() {
        return identity_columns(n);
    }
    let rows = columns_to_matrix(basis, n).adjoint();
    null_space(&rows, RANK_TOL)
}

pub fn identity_columns(n: usize) -> Vec<Vec<Scalar>> {
    (0..n).map(|k| (0..n).map(|r| Scalar::new(if r == k { 1.0 } else { 0.0 }, 0.0)).collect()).collect()
}

pub fn rank(cols: &[Vec<Scalar>], n: usize, rel_tol: f64) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let (sv, _) = svd_right(&columns_to_matrix(cols, n).adjoint());
    let top = sv.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}

/// Modified Gram-Schmidt (two passes) in the given order; vectors whose
/// residual falls below `tol` times their norm are skipped.
pub fn gram_schmidt(cols: &[Vec<Scalar>], tol: f64) -> Vec<Vec<Scalar>> {
    let mut out: Vec<Vec<Scalar>> = Vec::new();
    for v in cols {
        let norm0 = vnorm(v);
        if norm0 == 0.0 {
            continue;
        }
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &out {
                let c = vinner(q, &w);
                for (x, y) in w.iter_mut().zip(q) {
                    *x -= c * y;
                }
            }
        }
        let nw = vnorm(&w);
        if nw > tol * norm0 {
            out.push(w.into_iter().map(|x| x / nw).collect());
        }
    }
    out
}

/// Residual of `v` after orthogonal projection onto the span of an
/// orthonormal list.
pub fn residual(basis: &[Vec<Scalar>], v: &[Scalar]) -> f64 {
    let mut w = v.to_vec();
    for q in basis {
        let c = vinner(q, &w);
        for (x, y) in w.iter_mut().zip(q) {
            *x -= c * y;
        }
    }
    vnorm(&w)
}

/// Rows of the reduced row echelon form of the span, for display.
pub fn echelon(cols: &[Vec<Scalar>], n: usize, tol: f64) -> Vec<Vec<Scalar>> {
    let mut rows: Vec<Vec<Scalar>> = cols.to_vec();
    let mut out = Vec::new();
    let mut col = 0;
    while col < n && !rows.is_empty() {
        let (best, mag) =
            rows.iter()
                .enumerate()
                .map(|(k, r)| (k, r[col].norm()))
                .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if mag <= tol {
            col += 1;
            continue;
        }
        let pivot_row = rows.remove(best);
        let p = pivot_row[col];
        let pivot: Vec<Scalar> = pivot_row.iter().map(|x| x / p).collect();
        for r in rows.iter_mut() {
            let f = r[col];
            for (x, y) in r.iter_mut().zip(&pivot) {
                *x -= f * y;
            }
        }
        for r in out.iter_mut() {
            let row: &mut Vec<Scalar> = r;
            let f = row[col];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= f * y;
            }
        }
        out.push(pivot);
        col += 1;
    }
    for r in out.iter_mut() {
        for x in r.iter_mut() {
            if x.re.abs() <= tol {
                x.re = 0.0;
            }
            if x.im.abs() <= tol {
                x.im = 0.0;
            }
        }
    }
    out
}
