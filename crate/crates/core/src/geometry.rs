//! Principal angles, PO/OP factorizations, asymmetric angles, projections
//! and orthogonality tests.

use crate::error::{Error, Result};
use crate::linalg::{self, columns_to_matrix, CMat, RANK_TOL};
use crate::multivector::{Blade, Multivector, Scalar};
use crate::outermorphism::Outermorphism;
use crate::spaces::{inner_space, outer_space, SubspaceBasis};

/// Cosines below this count as a right angle.
pub const RIGHT_ANGLE_TOL: f64 = 1e-9;
/// Cosines above `1 − ZERO_ANGLE_TOL` count as a zero angle.
pub const ZERO_ANGLE_TOL: f64 = 1e-12;

/// Principal bases `e₁…e_p` of `V` and `f₁…f_q` of `W`, with
/// `⟨e_i,f_j⟩ = δ_ij σ_i` and `σ₁ ≥ … ≥ σ_m`, `m = min(p, q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalData {
    pub cosines: Vec<f64>,
    pub left: Vec<Vec<Scalar>>,
    pub right: Vec<Vec<Scalar>>,
}

impl PrincipalData {
    /// Principal angles in radians, snapped to `0` and `π/2` at the cutoffs.
    pub fn angles(&self) -> Vec<f64> {
        self.cosines
            .iter()
            .map(|&s| {
                if s < RIGHT_ANGLE_TOL {
                    std::f64::consts::FRAC_PI_2
                } else if s > 1.0 - ZERO_ANGLE_TOL {
                    0.0
                } else {
                    s.acos()
                }
            })
            .collect()
    }

    /// `sin θ_i`, computed from the cosines.
    pub fn sines(&self) -> Vec<f64> {
        self.angles().iter().map(|t| t.sin()).collect()
    }

    /// `dim(V ∩ W)`.
    pub fn intersection_dim(&self) -> usize {
        self.cosines.iter().filter(|&&s| s > 1.0 - ZERO_ANGLE_TOL).count()
    }
}

fn orthonormalize(n: usize, vectors: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    for v in vectors {
        if v.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: v.len() });
        }
    }
    if linalg::rank(vectors, n, RANK_TOL) < vectors.len() {
        return Err(Error::DependentVectors);
    }
    Ok(linalg::gram_schmidt(vectors, RANK_TOL))
}

fn complete(cols: Vec<Vec<Scalar>>, k: usize) -> Vec<Vec<Scalar>> {
    let mut out = cols;
    if out.len() < k {
        out.extend(linalg::orth_complement(&out, k));
    }
    out.truncate(k);
    out
}

/// Principal bases and cosines of `span V` and `span W` in `Cⁿ`, by SVD of
/// the cross-Gram matrix of orthonormalized inputs.
pub fn principal_angles(n: usize, v: &[Vec<Scalar>], w: &[Vec<Scalar>]) -> Result<PrincipalData> {
    let qv = orthonormalize(n, v)?;
    let qw = orthonormalize(n, w)?;
    let (p, q) = (qv.len(), qw.len());
    let m = p.min(q);
    if m == 0 {
        return Ok(PrincipalData { cosines: Vec::new(), left: qv, right: qw });
    }
    let mv = columns_to_matrix(&qv, n);
    let mw = columns_to_matrix(&qw, n);
    let g: CMat = mv.adjoint() * &mw;
    // Triples with negligible σ are dropped; completion supplies their vectors.
    let pairs: Vec<_> = linalg::svd_pairs(&g).into_iter().filter(|t| t.0 > 1e-13).take(m).collect();
    let mut cosines: Vec<f64> = pairs.iter().map(|t| t.0.clamp(0.0, 1.0)).collect();
    cosines.resize(m, 0.0);
    let ucols: Vec<Vec<Scalar>> = pairs.iter().map(|t| t.1.clone()).collect();
    let vcols: Vec<Vec<Scalar>> = pairs.into_iter().map(|t| t.2).collect();
    let ucols = complete(ucols, p);
    let vcols = complete(vcols, q);
    let lift = |basis: &CMat, cols: &[Vec<Scalar>]| -> Vec<Vec<Scalar>> {
        cols.iter().map(|c| (basis * nalgebra::DVector::from_column_slice(c)).iter().copied().collect()).collect()
    };
    Ok(PrincipalData { cosines, left: lift(&mv, &ucols), right: lift(&mw, &vcols) })
}

fn blade_basis(b: &Blade) -> Vec<Vec<Scalar>> {
    match b.vectors() {
        Some(v) => v.to_vec(),
        None => outer_space(b.mv()).into_columns(),
    }
}

fn wedge_vectors(n: usize, vs: &[Vec<Scalar>]) -> Multivector {
    vs.iter().fold(Multivector::one(n), |acc, v| {
        acc.wedge(&Multivector::from_vector(n, v).expect("vector length")).expect("same dimension")
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorOrder {
    /// `B = B_P ∧ B_⊥`.
    ProjectiveFirst,
    /// `B = B_⊥′ ∧ B_P`.
    OrthogonalFirst,
}

#[derive(Clone, Debug, PartialEq)]
pub struct POFactorization {
    pub b_p: Multivector,
    pub b_perp: Blade,
    pub eps_b: Scalar,
    pub order: FactorOrder,
}

impl POFactorization {
    pub fn reconstruct(&self) -> Result<Multivector> {
        match self.order {
            FactorOrder::ProjectiveFirst => self.b_p.wedge(self.b_perp.mv()),
            FactorOrder::OrthogonalFirst => self.b_perp.mv().wedge(&self.b_p),
        }
    }
}

/// Splits `B` along the principal basis of `[B]` with respect to `[A]`.
pub fn po_factorize(b: &Blade, a: &Blade, order: FactorOrder) -> Result<POFactorization> {
    if a.mv().is_zero() || b.mv().is_zero() {
        return Err(Error::ZeroInput("blade"));
    }
    let n = b.dim();
    if a.dim() != n {
        return Err(Error::AmbientMismatch(n, a.dim()));
    }
    let pd = principal_angles(n, &blade_basis(a), &blade_basis(b))?;
    let (p, q) = (pd.left.len(), pd.right.len());
    let m = p.min(q);
    let c = wedge_vectors(n, &pd.right).inner(b.mv())?;
    let eps_b = c / c.norm();
    let b_p = wedge_vectors(n, &pd.right[..m]).scale(c);
    let sign = if (m * (q - m)) % 2 == 1 && order == FactorOrder::OrthogonalFirst { -1.0 } else { 1.0 };
    let mut perp = pd.right[m..].to_vec();
    if let Some(first) = perp.first_mut() {
        for x in first.iter_mut() {
            *x *= sign;
        }
    }
    let b_perp = Blade::from_vectors(n, perp)?;
    Ok(POFactorization { b_p, b_perp, eps_b, order })
}

/// `(cos Θ_{A,B}, cos Θ_{[A],[B]})`: oriented cosine `⟨A,B_P⟩/(‖A‖‖B‖)` and
/// its modulus `Π σ_i` (zero when `p > q`).
pub fn asym_angle_cos(a: &Blade, b: &Blade) -> Result<(Scalar, f64)> {
    let one = Scalar::new(1.0, 0.0);
    let zero = Scalar::new(0.0, 0.0);
    if a.mv().is_zero() {
        return Ok((one, 1.0));
    }
    if b.mv().is_zero() {
        return Ok(if a.grade() == Some(0) { (one, 1.0) } else { (zero, 0.0) });
    }
    let po = po_factorize(b, a, FactorOrder::ProjectiveFirst)?;
    let (p, q) = (a.grade().unwrap_or(0), b.grade().unwrap_or(0));
    if p > q {
        return Ok((zero, 0.0));
    }
    let oriented = a.mv().inner(&po.b_p)? / (a.mv().norm() * b.mv().norm());
    let pd = principal_angles(b.dim(), &blade_basis(a), &blade_basis(b))?;
    Ok((oriented, pd.cosines.iter().product()))
}

/// `cos Θ_{[A],[B]^⊥} = Π_{i≤m} sin θ_i`.
pub fn cos_a_bperp(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<f64> {
    let pd = principal_angles(a.ambient(), a.columns(), b.columns())?;
    Ok(pd.sines().iter().product())
}

/// `cos Θ_{[A]^⊥,[B]}`: zero unless `[A] + [B]` is everything, one if either
/// is, and otherwise the product of `sin θ_i` past the shared directions.
pub fn cos_aperp_b(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<f64> {
    let n = a.ambient();
    if a.dim() == n || b.dim() == n {
        return Ok(1.0);
    }
    if a.sum(b).dim() < n {
        return Ok(0.0);
    }
    let pd = principal_angles(n, a.columns(), b.columns())?;
    let r = pd.intersection_dim();
    Ok(pd.sines()[r..].iter().product())
}

/// Orthogonal projection of `M` onto `⋀V`, as the outermorphism of `P_V`.
pub fn project(m: &Multivector, v: &[Vec<Scalar>]) -> Result<Multivector> {
    let n = m.dim();
    let q = orthonormalize(n, v)?;
    let qm = columns_to_matrix(&q, n);
    Outermorphism::new(&qm * qm.adjoint())?.apply(m)
}

/// `P_B M = (B⌟M)⌋B / ‖B‖²`.
pub fn project_blade(m: &Multivector, b: &Multivector) -> Result<Multivector> {
    let nsq = b.norm_sqr();
    if nsq == 0.0 {
        return Err(Error::ZeroInput("blade"));
    }
    Ok(b.rcontr(m)?.lcontr(b)?.scale(1.0 / nsq))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orthogonality {
    /// Some direction of `isp M` is orthogonal to `osp N`.
    Partial,
    /// `⟨M,N⟩ = 0`.
    Plain,
    /// `osp M ⟂ osp N`.
    Complete,
}

pub fn orthogonality(m: &Multivector, nn: &Multivector, kind: Orthogonality) -> Result<bool> {
    if m.dim() != nn.dim() {
        return Err(Error::AmbientMismatch(m.dim(), nn.dim()));
    }
    Ok(match kind {
        Orthogonality::Plain => m.inner(nn)?.norm() <= RIGHT_ANGLE_TOL * (m.norm() * nn.norm()).max(f64::MIN_POSITIVE),
        Orthogonality::Complete => outer_space(m).is_orthogonal_to(&outer_space(nn)),
        Orthogonality::Partial => !m.is_zero() && inner_space(m).intersection(&outer_space(nn).complement()).dim() > 0,
    })
}

/// `V ⊻ W`: some nonzero `v ∈ V` is orthogonal to all of `W`.
pub fn partially_orthogonal(v: &SubspaceBasis, w: &SubspaceBasis) -> bool {
    v.intersection(&w.complement()).dim() > 0
}
