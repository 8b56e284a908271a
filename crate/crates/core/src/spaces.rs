//! Inner and outer spaces, balanced decompositions, blade factorizations and
//! carvings.

use crate::error::{Error, Result};
use crate::linalg::{self, vnorm, RANK_TOL};
use crate::multiindex::lex_cmp;
use crate::multivector::{Blade, Multivector, Scalar};

/// Reconstruction tolerance for factorizations and carvings, relative to `‖M‖`.
pub const RECONSTRUCTION_TOL: f64 = 1e-8;

/// An orthonormal basis of a subspace of `Cⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis {
    n: usize,
    columns: Vec<Vec<Scalar>>,
}

impl SubspaceBasis {
    pub fn zero(n: usize) -> Self {
        SubspaceBasis { n, columns: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        SubspaceBasis { n, columns: linalg::identity_columns(n) }
    }

    /// Span of arbitrary vectors.
    pub fn span(n: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        for v in vectors {
            if v.len() != n {
                return Err(Error::LengthMismatch { expected: n, got: v.len() });
            }
        }
        Ok(SubspaceBasis { n, columns: linalg::orthonormal_span(vectors, n, RANK_TOL) })
    }

    pub fn span_real(n: usize, vectors: &[Vec<f64>]) -> Result<Self> {
        let v: Vec<Vec<Scalar>> = vectors.iter().map(|v| v.iter().map(|&x| Scalar::new(x, 0.0)).collect()).collect();
        Self::span(n, &v)
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> &[Vec<Scalar>] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<Vec<Scalar>> {
        self.columns
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        linalg::residual(&self.columns, v) <= RANK_TOL * vnorm(v).max(1.0)
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.columns.iter().all(|c| other.contains_vector(c))
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }

    pub fn complement(&self) -> Self {
        SubspaceBasis { n: self.n, columns: linalg::orth_complement(&self.columns, self.n) }
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut all = self.columns.clone();
        all.extend(other.columns.iter().cloned());
        SubspaceBasis { n: self.n, columns: linalg::orthonormal_span(&all, self.n, RANK_TOL) }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.complement().sum(&other.complement()).complement()
    }

    /// Every vector of `self` is orthogonal to every vector of `other`.
    pub fn is_orthogonal_to(&self, other: &Self) -> bool {
        self.columns.iter().all(|a| other.columns.iter().all(|b| linalg::vinner(a, b).norm() <= RANK_TOL))
    }

    /// `{0}` is the only common vector.
    pub fn meets_trivially(&self, other: &Self) -> bool {
        self.intersection(other).dim() == 0
    }

    /// Unit blade `q₁ ∧ … ∧ q_k` of the basis.
    pub fn blade(&self) -> Multivector {
        let mut b = Multivector::one(self.n);
        for c in &self.columns {
            b = b.wedge(&Multivector::from_vector(self.n, c).expect("column length")).expect("same dimension");
        }
        b
    }

    /// Reduced row echelon basis, handy for printing.
    pub fn echelon(&self) -> Vec<Vec<Scalar>> {
        linalg::echelon(&self.columns, self.n, RANK_TOL)
    }
}

fn image_space(m: &Multivector, f: impl Fn(&Multivector, &Multivector) -> Result<Multivector>) -> Result<linalg::CMat> {
    let n = m.dim();
    let cols: Vec<Multivector> =
        (0..n).map(|j| f(&Multivector::basis_bits(n, 1 << j, Scalar::new(1.0, 0.0)), m)).collect::<Result<_>>()?;
    let mut keys: Vec<u32> = cols.iter().flat_map(|c| c.terms().map(|(b, _)| b)).collect();
    keys.sort_unstable();
    keys.dedup();
    Ok(linalg::CMat::from_fn(keys.len(), n, |r, c| cols[c].coeff(keys[r])))
}

/// `isp M = {v : v∧M = 0}`.
pub fn inner_space(m: &Multivector) -> SubspaceBasis {
    let n = m.dim();
    if m.is_zero() {
        return SubspaceBasis::full(n);
    }
    let a = image_space(m, |v, m| v.wedge(m)).expect("same dimension");
    SubspaceBasis { n, columns: linalg::null_space(&a, RANK_TOL) }
}

/// `osp M = {v : v⌋M = 0}^⊥`.
pub fn outer_space(m: &Multivector) -> SubspaceBasis {
    let n = m.dim();
    if m.is_zero() {
        return SubspaceBasis::zero(n);
    }
    // v ↦ v⌋M is conjugate-linear: its kernel is the conjugate of the null
    // space of A, so the outer space is the conjugate of A's row space.
    let a = image_space(m, |v, m| v.lcontr(m)).expect("same dimension");
    let kernel = linalg::null_space(&a, RANK_TOL);
    let row_space = linalg::orth_complement(&kernel, n);
    SubspaceBasis { n, columns: row_space.into_iter().map(|c| c.into_iter().map(|x| x.conj()).collect()).collect() }
}

/// `M ⊂ N`, i.e. `osp M ⊆ isp N`.
pub fn contained(m: &Multivector, n: &Multivector) -> bool {
    outer_space(m).is_subspace_of(&inner_space(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BalanceSide {
    Inner,
    Outer,
    Both,
}

/// Checks a user-supplied decomposition `M = Σ parts`.
pub fn is_balanced(m: &Multivector, parts: &[Multivector], side: BalanceSide) -> Result<bool> {
    let n = m.dim();
    let mut sum = Multivector::zero(n);
    for p in parts {
        sum = sum.try_add(p)?;
    }
    let resid = sum.distance(m)?;
    if resid > RECONSTRUCTION_TOL * m.norm().max(1.0) {
        return Err(Error::Reconstruction(resid));
    }
    let inner_ok = || {
        let meet = parts.iter().fold(SubspaceBasis::full(n), |acc, p| acc.intersection(&inner_space(p)));
        meet.same_as(&inner_space(m))
    };
    let outer_ok = || {
        let total = parts.iter().fold(SubspaceBasis::zero(n), |acc, p| acc.sum(&outer_space(p)));
        total.same_as(&outer_space(m))
    };
    Ok(match side {
        BalanceSide::Inner => inner_ok(),
        BalanceSide::Outer => outer_ok(),
        BalanceSide::Both => inner_ok() && outer_ok(),
    })
}

/// Unit norm, first nonzero coefficient (lexicographic index order) real
/// positive.
pub fn gauge_blade(b: &Multivector) -> Multivector {
    let norm = b.norm();
    if norm == 0.0 {
        return b.clone();
    }
    let cutoff = RANK_TOL * b.max_abs();
    let mut terms: Vec<(u32, Scalar)> = b.terms().filter(|(_, c)| c.norm() > cutoff).collect();
    terms.sort_by(|x, y| lex_cmp(x.0, y.0));
    let first = terms[0].1;
    let phase = first.conj() / first.norm();
    b.scale(phase / norm)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResultKind {
    /// The canonical output of [`factorize_maximal`] or [`carve_minimal`].
    Canonical,
    User,
}

#[derive(Clone, Debug)]
pub struct FactorizationResult {
    pub b: Blade,
    pub n: Multivector,
    pub kind: ResultKind,
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct CarvingResult {
    pub b: Blade,
    pub n: Multivector,
    pub kind: ResultKind,
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct FactorizationFlags {
    pub efficient: bool,
    pub orthogonal: bool,
    pub maximal: bool,
    pub optimal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct CarvingFlags {
    pub efficient: bool,
    pub internal: bool,
    pub minimal: bool,
    pub optimal: bool,
}

/// `M = B∧N` with `[B] = isp M` and `N = B⌋M/‖B‖²`.
pub fn factorize_maximal(m: &Multivector) -> Result<FactorizationResult> {
    if m.is_zero() {
        return Err(Error::ZeroInput("multivector"));
    }
    let isp = inner_space(m);
    let b = gauge_blade(&isp.blade());
    let n = b.lcontr(m)?.scale(1.0 / b.norm_sqr());
    let residual = b.wedge(&n)?.distance(m)?;
    Ok(FactorizationResult {
        b: Blade::with_vectors(b, phased_columns(&isp, &gauge_phase(&isp)))?,
        n,
        kind: ResultKind::Canonical,
        residual,
    })
}

/// `M = N⌋B` with `[B] = osp M` and `N = B⌟M/‖B‖²`.
pub fn carve_minimal(m: &Multivector) -> Result<CarvingResult> {
    if m.is_zero() {
        return Err(Error::ZeroInput("multivector"));
    }
    let osp = outer_space(m);
    let b = gauge_blade(&osp.blade());
    let n = b.rcontr(m)?.scale(1.0 / b.norm_sqr());
    let residual = n.lcontr(&b)?.distance(m)?;
    Ok(CarvingResult {
        b: Blade::with_vectors(b, phased_columns(&osp, &gauge_phase(&osp)))?,
        n,
        kind: ResultKind::Canonical,
        residual,
    })
}

/// Phase taking the basis blade of `s` to its gauged form.
fn gauge_phase(s: &SubspaceBasis) -> Scalar {
    let raw = s.blade();
    let g = gauge_blade(&raw);
    raw.inner(&g).expect("same dimension")
}

fn phased_columns(s: &SubspaceBasis, phase: &Scalar) -> Vec<Vec<Scalar>> {
    let mut cols = s.columns().to_vec();
    if let Some(first) = cols.first_mut() {
        for x in first.iter_mut() {
            *x *= phase;
        }
    }
    cols
}

impl FactorizationResult {
    pub fn user(m: &Multivector, b: Blade, n: Multivector) -> Result<Self> {
        let residual = b.mv().wedge(&n)?.distance(m)?;
        Ok(FactorizationResult { b, n, kind: ResultKind::User, residual })
    }
}

impl CarvingResult {
    pub fn user(m: &Multivector, b: Blade, n: Multivector) -> Result<Self> {
        let residual = n.lcontr(b.mv())?.distance(m)?;
        Ok(CarvingResult { b, n, kind: ResultKind::User, residual })
    }
}

fn check_reconstruction(m: &Multivector, got: &Multivector) -> Result<()> {
    let r = got.distance(m)?;
    if r > RECONSTRUCTION_TOL * m.norm().max(1e-300) && r > 0.0 {
        return Err(Error::Reconstruction(r));
    }
    Ok(())
}

/// Quality flags of a factorization `M = B∧N`.
pub fn classify_factorization(m: &Multivector, b: &Multivector, n: &Multivector) -> Result<FactorizationFlags> {
    check_reconstruction(m, &b.wedge(n)?)?;
    let bsp = outer_space(b);
    let nsp = outer_space(n);
    let efficient = nsp.meets_trivially(&bsp);
    let orthogonal = nsp.is_orthogonal_to(&bsp);
    let maximal = bsp.same_as(&inner_space(m));
    Ok(FactorizationFlags { efficient, orthogonal, maximal, optimal: efficient && maximal })
}

/// Quality flags of a carving `M = N⌋B`.
pub fn classify_carving(m: &Multivector, b: &Multivector, n: &Multivector) -> Result<CarvingFlags> {
    check_reconstruction(m, &n.lcontr(b)?)?;
    let bsp = outer_space(b);
    let nsp = outer_space(n);
    let efficient = nsp.meets_trivially(&bsp.complement());
    let internal = nsp.is_subspace_of(&bsp);
    let minimal = bsp.same_as(&outer_space(m));
    Ok(CarvingFlags { efficient, internal, minimal, optimal: efficient && minimal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multivector::testutil::*;

    fn mixed5() -> Multivector {
        let n = 5;
        e(n, &[1, 3, 4]) - e(n, &[1, 4, 5]) + e(n, &[3, 4, 5]) + e(n, &[1, 2, 3, 5])
    }

    fn mixed6() -> Multivector {
        let n = 6;
        e(n, &[1, 2, 3]) + e(n, &[1, 4, 5]).scale(2.0) - e(n, &[1, 4, 6])
    }

    #[test]
    fn example_spaces() {
        let m = mixed5();
        let isp = inner_space(&m);
        let expect =
            SubspaceBasis::span_real(5, &[vec![1.0, 0.0, -1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0, 0.0, 1.0]]).unwrap();
        assert!(isp.same_as(&expect));
        assert_eq!(outer_space(&m).dim(), 5);

        let m = mixed6();
        assert!(inner_space(&m).same_as(&SubspaceBasis::span_real(6, &[vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0]]).unwrap()));
        let perp = SubspaceBasis::span_real(6, &[vec![0.0, 0.0, 0.0, 0.0, 1.0, 2.0]]).unwrap().complement();
        assert!(outer_space(&m).same_as(&perp));
        assert_eq!(outer_space(&Multivector::scalar(3, 2.0)).dim(), 0);
        assert_eq!(inner_space(&Multivector::zero(3)).dim(), 3);
    }

    #[test]
    fn blade_spaces() {
        let b = (e(4, &[1]) + e(4, &[2])).wedge(&(e(4, &[3]).scale(Scalar::new(0.0, 1.0)) + e(4, &[4]))).unwrap();
        assert!(inner_space(&b).same_as(&outer_space(&b)));
        assert_eq!(inner_space(&b).dim(), 2);
    }

    #[test]
    fn containment() {
        let n = 3;
        assert!(contained(&e(n, &[1, 2]), &Multivector::zero(n)));
        assert!(contained(&e(n, &[1]), &e(n, &[1, 2])));
        assert!(!contained(&e(n, &[3]), &e(n, &[1, 2])));
        let m = mixed5();
        let f = factorize_maximal(&m).unwrap();
        assert!(contained(f.b.mv(), &m));
    }

    #[test]
    fn balanced_examples() {
        let m = mixed5();
        let parts = vec![e(5, &[1, 3, 4]), -e(5, &[1, 4, 5]), e(5, &[3, 4, 5]), e(5, &[1, 2, 3, 5])];
        assert!(is_balanced(&m, &parts, BalanceSide::Outer).unwrap());
        assert!(!is_balanced(&m, &parts, BalanceSide::Inner).unwrap());
        let m = mixed6();
        let parts = vec![e(6, &[1, 2, 3]), e(6, &[1, 4, 5]).scale(2.0), -e(6, &[1, 4, 6])];
        assert!(is_balanced(&m, &parts, BalanceSide::Inner).unwrap());
        assert!(!is_balanced(&m, &parts, BalanceSide::Outer).unwrap());
        assert!(is_balanced(&m, &parts[..2], BalanceSide::Inner).is_err());

        let mut r = rng(4);
        for _ in 0..20 {
            let m = rand_mv(&mut r, 5, 8, true);
            let parts: Vec<Multivector> = (0..=5).map(|p| m.grade_project(p)).filter(|x| !x.is_zero()).collect();
            assert!(is_balanced(&m, &parts, BalanceSide::Both).unwrap());
        }
    }

    #[test]
    fn factorization_example() {
        let m = mixed5();
        let b0 = (e(5, &[1]) - e(5, &[3])).wedge(&(e(5, &[3]) + e(5, &[5]))).unwrap();
        let f = factorize_maximal(&m).unwrap();
        assert!(f.b.mv().approx_eq(&b0.scale(1.0 / 3f64.sqrt()), 1e-12));
        let n0 = e(5, &[4]) + (e(5, &[2, 3]) - e(5, &[1, 2]) - e(5, &[2, 5])).scale(1.0 / 3.0);
        assert!(f.n.approx_eq(&n0.scale(3f64.sqrt()), 1e-12));
        assert!(f.residual < 1e-12);
        let flags = classify_factorization(&m, f.b.mv(), &f.n).unwrap();
        assert_eq!(flags, FactorizationFlags { efficient: true, orthogonal: true, maximal: true, optimal: true });

        let n1 = e(5, &[4]) + e(5, &[2, 3]);
        let flags = classify_factorization(&m, &b0, &n1).unwrap();
        assert!(flags.optimal && !flags.orthogonal);
        let n2 = e(5, &[4]) + e(5, &[2, 3]) + e(5, &[1, 5]);
        let flags = classify_factorization(&m, &b0, &n2).unwrap();
        assert!(flags.maximal && !flags.efficient);
        assert!(classify_factorization(&m, &b0, &e(5, &[4])).is_err());

        let m = mixed6();
        let f = factorize_maximal(&m).unwrap();
        assert!(f.b.mv().approx_eq(&e(6, &[1]), 1e-12));
        let n0 = e(6, &[2, 3]) + e(6, &[4, 5]).scale(2.0) - e(6, &[4, 6]);
        assert!(f.n.approx_eq(&n0, 1e-12));
    }

    #[test]
    fn carving_examples() {
        let m = mixed6();
        let n = 6;
        let b0 = e(n, &[1, 2, 3, 4]).wedge(&(e(n, &[6]) - e(n, &[5]).scale(2.0))).unwrap();
        let c = carve_minimal(&m).unwrap();
        let s5 = 5f64.sqrt();
        assert!(c.b.mv().approx_eq(&b0.scale(-1.0 / s5), 1e-12));
        let n0 = (e(n, &[4, 6]) - e(n, &[4, 5]).scale(2.0)).scale(0.2) - e(n, &[2, 3]);
        assert!(c.n.approx_eq(&n0.scale(-s5), 1e-12));
        let flags = classify_carving(&m, c.b.mv(), &c.n).unwrap();
        assert_eq!(flags, CarvingFlags { efficient: true, internal: true, minimal: true, optimal: true });
        let n1 = e(n, &[4, 6]) - e(n, &[2, 3]);
        let flags = classify_carving(&m, &b0, &n1).unwrap();
        assert!(flags.optimal && !flags.internal);
        let n2 = e(n, &[4, 6]) - e(n, &[2, 3]) + e(n, &[1, 5]) + e(n, &[1, 6]).scale(2.0);
        let flags = classify_carving(&m, &b0, &n2).unwrap();
        assert!(flags.minimal && !flags.efficient);

        let m = mixed5();
        let c = carve_minimal(&m).unwrap();
        assert!(c.b.mv().approx_eq(&e(5, &[1, 2, 3, 4, 5]), 1e-12));
        let n0 = e(5, &[2, 5]) - e(5, &[2, 3]) + e(5, &[1, 2]) - e(5, &[4]);
        assert!(c.n.approx_eq(&n0, 1e-12));
        assert!(carve_minimal(&Multivector::zero(3)).is_err());
    }

    #[test]
    fn blade_inputs() {
        let b = e(4, &[1, 3]).scale(Scalar::new(0.0, 2.0));
        let f = factorize_maximal(&b).unwrap();
        assert!(f.n.homogeneous_grade() == Some(0));
        let c = carve_minimal(&b).unwrap();
        assert!(c.n.homogeneous_grade() == Some(0));
        assert!(f.b.mv().approx_eq(&e(4, &[1, 3]), 1e-12));
    }

    mod props {
        use super::*;
        use crate::star::Orientation;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn isp_in_osp(seed in any::<u64>(), n in 1usize..=6) {
                let m = rand_mv(&mut rng(seed), n, 6, true);
                prop_assert!(inner_space(&m).is_subspace_of(&outer_space(&m)));
            }

            #[test]
            fn star_exchanges_spaces(seed in any::<u64>(), n in 1usize..=6) {
                let m = rand_mv(&mut rng(seed), n, 6, true);
                let s = Orientation::standard(n).rstar(&m).unwrap();
                prop_assert!(outer_space(&s).same_as(&inner_space(&m).complement()));
                prop_assert!(inner_space(&s).same_as(&outer_space(&m).complement()));
            }

            #[test]
            fn round_trips(seed in any::<u64>(), n in 1usize..=6) {
                let m = rand_mv(&mut rng(seed), n, 6, true);
                let f = factorize_maximal(&m).unwrap();
                prop_assert!(f.residual <= RECONSTRUCTION_TOL * m.norm());
                let c = carve_minimal(&m).unwrap();
                prop_assert!(c.residual <= RECONSTRUCTION_TOL * m.norm());
            }

            #[test]
            fn wedge_spaces(seed in any::<u64>(), n in 2usize..=6) {
                let mut r = rng(seed);
                let m = rand_mv(&mut r, n, 4, true);
                let nn = rand_mv(&mut r, n, 4, true);
                let w = m.wedge(&nn).unwrap();
                prop_assert!(outer_space(&w).is_subspace_of(&outer_space(&m).sum(&outer_space(&nn))));
                prop_assert!(inner_space(&m).sum(&inner_space(&nn)).is_subspace_of(&inner_space(&w)));
            }
        }
    }
}
