//! Exterior and interior multiplication operators, fermionic creation and
//! annihilation operators, occupancy/vacancy projectors and supercommutators.
//!
//! Operators are kept symbolic and applied lazily; [`dense_matrix`] turns
//! one into a `2ⁿ × 2ⁿ` matrix whose column `b` is the image of `e_b`.

use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::multiindex::{full_bits, pairs_bits, parity_sign, IndexSeq, MultiIndex};
use crate::multivector::{re, Blade, Multivector, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum OpKind {
    /// `ε_M(N) = M∧N`
    Exterior(Multivector),
    /// `ι_M(N) = M⌋N`
    Interior(Multivector),
    /// `a_r† = ε_{e_r}`; unsorted `r` carries `ε_r`.
    Creation(IndexSeq),
    /// `a_r = ι_{e_r}`
    Annihilation(IndexSeq),
    /// `n_i = a_i† a_i`
    Occupancy(MultiIndex),
    /// `m_i = a_i a_i†`
    Vacancy(MultiIndex),
    /// Product `S₁ S₂ … S_k`, applied right to left; empty is the identity.
    Composed(Vec<FockOperator>),
    /// `Σ c_k S_k`
    Sum(Vec<(Scalar, FockOperator)>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FockOperator {
    n: usize,
    kind: OpKind,
}

fn pure_parity(m: &Multivector) -> Option<usize> {
    let mut grades = m.grades().into_iter().map(|g| g % 2);
    let first = grades.next().unwrap_or(0);
    grades.all(|g| g == first).then_some(first)
}

fn same_dim(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::AmbientMismatch(a, b))
    }
}

impl FockOperator {
    pub fn exterior(m: Multivector) -> Self {
        FockOperator { n: m.dim(), kind: OpKind::Exterior(m) }
    }

    pub fn interior(m: Multivector) -> Self {
        FockOperator { n: m.dim(), kind: OpKind::Interior(m) }
    }

    pub fn creation(r: &[usize], n: usize) -> Result<Self> {
        Ok(FockOperator { n, kind: OpKind::Creation(IndexSeq::new(r.to_vec(), n)?) })
    }

    pub fn annihilation(r: &[usize], n: usize) -> Result<Self> {
        Ok(FockOperator { n, kind: OpKind::Annihilation(IndexSeq::new(r.to_vec(), n)?) })
    }

    pub fn occupancy(i: MultiIndex) -> Self {
        FockOperator { n: i.ambient(), kind: OpKind::Occupancy(i) }
    }

    pub fn vacancy(i: MultiIndex) -> Self {
        FockOperator { n: i.ambient(), kind: OpKind::Vacancy(i) }
    }

    pub fn identity(n: usize) -> Self {
        FockOperator { n, kind: OpKind::Composed(Vec::new()) }
    }

    pub fn zero(n: usize) -> Self {
        FockOperator { n, kind: OpKind::Sum(Vec::new()) }
    }

    pub fn kind(&self) -> &OpKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FockOperator) -> Result<Self> {
        same_dim(self.n, other.n)?;
        Ok(FockOperator { n: self.n, kind: OpKind::Composed(vec![self.clone(), other.clone()]) })
    }

    pub fn scale(&self, s: impl Into<Scalar>) -> Self {
        FockOperator { n: self.n, kind: OpKind::Sum(vec![(s.into(), self.clone())]) }
    }

    pub fn linear_combination(n: usize, parts: Vec<(Scalar, FockOperator)>) -> Result<Self> {
        for (_, p) in &parts {
            same_dim(n, p.n)?;
        }
        Ok(FockOperator { n, kind: OpKind::Sum(parts) })
    }

    pub fn plus(&self, other: &FockOperator) -> Result<Self> {
        Self::linear_combination(self.n, vec![(re(1.0), self.clone()), (re(1.0), other.clone())])
    }

    pub fn minus(&self, other: &FockOperator) -> Result<Self> {
        Self::linear_combination(self.n, vec![(re(1.0), self.clone()), (re(-1.0), other.clone())])
    }

    /// Parity `0` (even) or `1` (odd); `None` for operators of mixed parity.
    pub fn parity(&self) -> Option<usize> {
        match &self.kind {
            OpKind::Exterior(m) | OpKind::Interior(m) => pure_parity(m),
            OpKind::Creation(r) | OpKind::Annihilation(r) => Some(r.len() % 2),
            OpKind::Occupancy(_) | OpKind::Vacancy(_) => Some(0),
            OpKind::Composed(ops) => ops.iter().try_fold(0, |acc, op| op.parity().map(|p| (acc + p) % 2)),
            OpKind::Sum(parts) => {
                let mut ps = parts.iter().map(|(_, op)| op.parity());
                let first = ps.next().unwrap_or(Some(0))?;
                ps.all(|p| p == Some(first)).then_some(first)
            }
        }
    }

    pub fn apply(&self, m: &Multivector) -> Result<Multivector> {
        same_dim(self.n, m.dim())?;
        match &self.kind {
            OpKind::Exterior(x) => x.wedge(m),
            OpKind::Interior(x) => x.lcontr(m),
            OpKind::Creation(r) => Multivector::e(self.n, r.as_slice())?.wedge(m),
            OpKind::Annihilation(r) => Multivector::e(self.n, r.as_slice())?.lcontr(m),
            OpKind::Occupancy(i) => {
                let ib = i.bits();
                Ok(Multivector::from_terms(self.n, m.terms().filter(|(b, _)| b & ib == ib)))
            }
            OpKind::Vacancy(i) => {
                let ib = i.bits();
                Ok(Multivector::from_terms(self.n, m.terms().filter(|(b, _)| b & ib == 0)))
            }
            OpKind::Composed(ops) => ops.iter().rev().try_fold(m.clone(), |acc, op| op.apply(&acc)),
            OpKind::Sum(parts) => {
                let mut acc = Multivector::zero(self.n);
                for (c, op) in parts {
                    acc += &op.apply(m)?.scale(*c);
                }
                Ok(acc)
            }
        }
    }
}

/// `⟦S,T⟧ = ST − (−1)^{st} TS`; both operators need a definite parity.
pub fn supercommutator(s: &FockOperator, t: &FockOperator) -> Result<FockOperator> {
    let ps = s.parity().ok_or(Error::NotHomogeneous)?;
    let pt = t.parity().ok_or(Error::NotHomogeneous)?;
    let sign = parity_sign((ps * pt) as u32) as f64;
    FockOperator::linear_combination(s.n, vec![(re(1.0), s.compose(t)?), (re(-sign), t.compose(s)?)])
}

/// `⟦a_i†, a_j⟧M` computed as `a_i†(a_j M) − (−1)^{|i||j|} a_j(a_i† M)`.
pub fn supercommutator_direct(i: &MultiIndex, j: &MultiIndex, m: &Multivector) -> Result<Multivector> {
    let n = m.dim();
    same_dim(n, i.ambient())?;
    same_dim(n, j.ambient())?;
    let ei = Multivector::basis(*i);
    let ej = Multivector::basis(*j);
    let first = ei.wedge(&ej.lcontr(m)?)?;
    let second = ej.lcontr(&ei.wedge(m)?)?;
    let sign = parity_sign((i.grade() * j.grade()) as u32) as f64;
    first.try_sub(&second.scale(sign))
}

/// `⟦a_i†, a_j⟧e_k` in closed form: `None` for zero, else `(±1, ⟨ace⟩)`.
pub fn supercommutator_closed(i: &MultiIndex, j: &MultiIndex, k: &MultiIndex) -> Option<(i8, MultiIndex)> {
    let (i_, j_, k_) = (i.bits(), j.bits(), k.bits());
    let x = j_ & !(i_ | k_);
    let y = (i_ & k_) & !j_;
    if x != 0 || y != 0 {
        return None;
    }
    let c = i_ & j_ & k_;
    let d = (i_ & j_) & !k_;
    let a = i_ & !j_;
    let b = (j_ & k_) & !i_;
    let e = k_ & !(i_ | j_);
    let delta = (d == 0) as i8 - (c == 0) as i8;
    if delta == 0 {
        return None;
    }
    let sign = delta * parity_sign(d.count_ones() + pairs_bits(a | b, d | e));
    let n = i.ambient().max(j.ambient()).max(k.ambient());
    Some((sign, MultiIndex::from_bits(a | c | e, n).expect("subset of the inputs")))
}

/// Dense `2ⁿ × 2ⁿ` matrix of an operator.
pub fn dense_matrix(op: &FockOperator) -> Result<CMat> {
    let n = op.dim();
    let size = full_bits(n) as usize + 1;
    let mut out = CMat::zeros(size, size);
    for col in 0..size {
        let img = op.apply(&Multivector::basis_bits(n, col as u32, re(1.0)))?;
        for (b, c) in img.terms() {
            out[(b as usize, col)] = c;
        }
    }
    Ok(out)
}

/// Right side of the Leibniz rule for `⟦ι_B, ε_M⟧`:
/// `ε_{B⌋M} + Σ_{0<|i|<p} ε_{ii'} ε_{B_{i'}⌋M^(|i|)} ι_{B_i}`.
pub fn leibniz_operator(b: &Blade, m: &Multivector) -> Result<FockOperator> {
    let p = b.vectors().ok_or(Error::MissingFactorization)?.len();
    let n = b.dim();
    let mut parts = vec![(re(1.0), FockOperator::exterior(b.mv().lcontr(m)?))];
    let all = full_bits(p);
    for i in 1..all {
        let ic = all & !i;
        let sign = parity_sign(pairs_bits(i, ic)) as f64;
        let left = b.subblade(ic)?.lcontr(&m.grade_involution_pow(i.count_ones() as usize))?;
        let op = FockOperator::exterior(left).compose(&FockOperator::interior(b.subblade(i)?))?;
        parts.push((re(sign), op));
    }
    FockOperator::linear_combination(n, parts)
}

/// Largest entry of `⟦ι_B, ε_M⟧ − leibniz_operator(B, M)` as dense matrices.
/// Mixed-parity `M` is split into its even and odd parts.
pub fn leibniz_supercommutator(b: &Blade, m: &Multivector) -> Result<f64> {
    let rhs = dense_matrix(&leibniz_operator(b, m)?)?;
    let (even, odd) = m.parity_split();
    let ib = FockOperator::interior(b.mv().clone());
    let mut lhs = dense_matrix(&supercommutator(&ib, &FockOperator::exterior(even))?)?;
    lhs += dense_matrix(&supercommutator(&ib, &FockOperator::exterior(odd))?)?;
    Ok((lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multivector::testutil::*;
    use crate::star::Orientation;

    fn mi(idx: &[usize], n: usize) -> MultiIndex {
        MultiIndex::from_indices(idx, n).unwrap()
    }

    fn all_indices(n: usize) -> impl Iterator<Item = MultiIndex> {
        (0..=full_bits(n)).map(move |b| MultiIndex::from_bits(b, n).unwrap())
    }

    fn is_zero_matrix(m: &CMat) -> bool {
        m.iter().all(|z| z.norm() < 1e-12)
    }

    #[test]
    fn ladder_examples() {
        let a14 = FockOperator::annihilation(&[1, 4], 4).unwrap();
        let c14 = FockOperator::creation(&[1, 4], 4).unwrap();
        assert_eq!(a14.apply(&e(4, &[1, 2, 4])).unwrap(), -e(4, &[2]));
        assert!(a14.apply(&e(4, &[1, 2, 3])).unwrap().is_zero());
        assert_eq!(c14.apply(&e(4, &[2])).unwrap(), -e(4, &[1, 2, 4]));
        assert!(c14.apply(&e(4, &[1])).unwrap().is_zero());
        // Unsorted sequences pick up ε_r.
        let a41 = FockOperator::annihilation(&[4, 1], 4).unwrap();
        assert_eq!(a41.apply(&e(4, &[1, 2, 4])).unwrap(), e(4, &[2]));
        assert!(FockOperator::creation(&[2, 2], 4).unwrap().apply(&e(4, &[1])).unwrap().is_zero());
        assert_eq!(a14.apply(&e(5, &[1])), Err(Error::AmbientMismatch(4, 5)));
    }

    #[test]
    fn supercommutator_examples() {
        let n = 7;
        let got = supercommutator_closed(&mi(&[2, 3, 4, 7], n), &mi(&[1, 3, 6], n), &mi(&[1, 3, 5, 6], n));
        assert_eq!(got, Some((1, mi(&[2, 3, 4, 5, 7], n))));
        let got = supercommutator_closed(&mi(&[1, 2, 3, 6], n), &mi(&[1, 3, 4, 6, 7], n), &mi(&[4, 5, 7], n));
        assert_eq!(got, Some((-1, mi(&[2, 5], n))));
        let direct = supercommutator_direct(&mi(&[2, 3, 4, 7], n), &mi(&[1, 3, 6], n), &e(n, &[1, 3, 5, 6])).unwrap();
        assert_eq!(direct, e(n, &[2, 3, 4, 5, 7]));
        let direct =
            supercommutator_direct(&mi(&[1, 2, 3, 6], n), &mi(&[1, 3, 4, 6, 7], n), &e(n, &[4, 5, 7])).unwrap();
        assert_eq!(direct, -e(n, &[2, 5]));
        assert!(supercommutator_direct(&mi(&[1], 3), &mi(&[2], 3), &e(3, &[2, 3])).unwrap().is_zero());
    }

    /// `⟦a_i†, a_i⟧e_k` is `e_k` for `∅ ≠ i ⊂ k`, `(−1)^{|i|+1} e_k` for
    /// disjoint nonempty `i`, and zero otherwise.
    #[test]
    fn diagonal_supercommutator() {
        let n = 4;
        for i in all_indices(n) {
            for k in all_indices(n) {
                let got = supercommutator_closed(&i, &i, &k);
                let expect = if i.is_empty() {
                    None
                } else if i.is_subset(&k) {
                    Some((1, k))
                } else if i.is_disjoint(&k) {
                    Some((parity_sign(i.grade() as u32 + 1), k))
                } else {
                    None
                };
                assert_eq!(got, expect, "i={i:?} k={k:?}");
            }
        }
    }

    #[test]
    fn closed_form_matches_direct_exhaustively() {
        let n = 5;
        for i in all_indices(n) {
            for j in all_indices(n) {
                for k in all_indices(n) {
                    let direct = supercommutator_direct(&i, &j, &Multivector::basis(k)).unwrap();
                    let expect = match supercommutator_closed(&i, &j, &k) {
                        None => Multivector::zero(n),
                        Some((s, r)) => Multivector::basis(r).scale(s as f64),
                    };
                    assert_eq!(direct, expect);
                    if i.is_disjoint(&j) {
                        assert!(direct.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn same_kind_supercommutators_vanish() {
        let n = 4;
        for i in all_indices(n) {
            for j in all_indices(n) {
                let (ri, rj) = (i.indices(), j.indices());
                let ai = FockOperator::annihilation(&ri, n).unwrap();
                let aj = FockOperator::annihilation(&rj, n).unwrap();
                let ci = FockOperator::creation(&ri, n).unwrap();
                let cj = FockOperator::creation(&rj, n).unwrap();
                assert!(is_zero_matrix(&dense_matrix(&supercommutator(&ai, &aj).unwrap()).unwrap()));
                assert!(is_zero_matrix(&dense_matrix(&supercommutator(&ci, &cj).unwrap()).unwrap()));
            }
        }
    }

    #[test]
    fn ladder_operators_nilpotent_and_inverse() {
        let n = 5;
        for i in all_indices(n).filter(|i| !i.is_empty()) {
            let a = FockOperator::annihilation(&i.indices(), n).unwrap();
            let c = FockOperator::creation(&i.indices(), n).unwrap();
            assert!(is_zero_matrix(&dense_matrix(&a.compose(&a).unwrap()).unwrap()));
            assert!(is_zero_matrix(&dense_matrix(&c.compose(&c).unwrap()).unwrap()));
            // a_i† and a_i are mutually inverse between the spans of
            // {e_k : i ∩ k = ∅} and {e_k : i ⊂ k}.
            for k in all_indices(n).filter(|k| k.is_disjoint(&i)) {
                let up = c.apply(&Multivector::basis(k)).unwrap();
                assert_eq!(a.apply(&up).unwrap(), Multivector::basis(k));
            }
        }
    }

    /// The projectors are diagonal, so products reduce to entrywise products
    /// of the diagonals.
    #[test]
    fn projector_laws() {
        let n = 5;
        let size = 1usize << n;
        let diag = |op: &FockOperator| -> Vec<Scalar> {
            let d = dense_matrix(op).unwrap();
            assert_eq!(d, CMat::from_diagonal(&d.diagonal()));
            d.diagonal().iter().copied().collect()
        };
        let mul = |a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> { a.iter().zip(b).map(|(x, y)| x * y).collect() };
        let vac: Vec<Vec<Scalar>> = all_indices(n).map(|i| diag(&FockOperator::vacancy(i))).collect();
        let occ: Vec<Vec<Scalar>> = all_indices(n).map(|i| diag(&FockOperator::occupancy(i))).collect();
        for i in all_indices(n) {
            let ib = i.bits() as usize;
            let (m, nn) = (&vac[ib], &occ[ib]);
            let ri = i.indices();
            let a = FockOperator::annihilation(&ri, n).unwrap();
            let c = FockOperator::creation(&ri, n).unwrap();
            assert_eq!(*nn, diag(&c.compose(&a).unwrap()));
            assert_eq!(*m, diag(&a.compose(&c).unwrap()));
            assert_eq!(mul(m, m), *m);
            assert_eq!(mul(nn, nn), *nn);
            if i.grade() == 1 {
                assert!(m.iter().zip(nn).all(|(x, y)| *x + *y == re(1.0)));
            }
            for jb in 0..size {
                assert_eq!(mul(m, &vac[jb]), vac[ib | jb]);
                assert_eq!(mul(nn, &occ[jb]), occ[ib | jb]);
            }
            // Inclusion–exclusion in both directions.
            let mut m_sum = vec![re(0.0); size];
            let mut n_sum = m_sum.clone();
            for j in all_indices(n).filter(|j| j.is_subset(&i)) {
                let s = parity_sign(j.grade() as u32) as f64;
                for k in 0..size {
                    m_sum[k] += occ[j.bits() as usize][k] * s;
                    n_sum[k] += vac[j.bits() as usize][k] * s;
                }
            }
            assert_eq!(m_sum, *m);
            assert_eq!(n_sum, *nn);
        }
    }

    #[test]
    fn basis_action_of_projectors() {
        let n = 4;
        for i in all_indices(n) {
            for k in all_indices(n) {
                let ek = Multivector::basis(k);
                let occ = FockOperator::occupancy(i).apply(&ek).unwrap();
                let vac = FockOperator::vacancy(i).apply(&ek).unwrap();
                assert_eq!(occ.is_zero(), !i.is_subset(&k));
                assert_eq!(vac.is_zero(), !i.is_subset(&k.complement()));
            }
        }
    }

    #[test]
    fn leibniz_examples() {
        let n = 4;
        let mut r = rng(5);
        let m = rand_mv(&mut r, n, 10, true);
        let b = Blade::from_real_vectors(n, &[vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0, 0.0]]).unwrap();
        assert!(leibniz_supercommutator(&b, &m).unwrap() < 1e-12);
        // The explicit grade-2 expansion.
        let mh = m.grade_involution();
        let e1 = e(n, &[1]);
        let e2 = e(n, &[2]);
        let explicit = FockOperator::linear_combination(
            n,
            vec![
                (re(1.0), FockOperator::exterior(b.mv().lcontr(&m).unwrap())),
                (
                    re(1.0),
                    FockOperator::exterior(e2.lcontr(&mh).unwrap())
                        .compose(&FockOperator::interior(e1.clone()))
                        .unwrap(),
                ),
                (
                    re(-1.0),
                    FockOperator::exterior(e1.lcontr(&mh).unwrap()).compose(&FockOperator::interior(e2)).unwrap(),
                ),
            ],
        )
        .unwrap();
        assert!(
            (dense_matrix(&explicit).unwrap() - dense_matrix(&leibniz_operator(&b, &m).unwrap()).unwrap()).norm()
                < 1e-12
        );
        // Vectors: ⟦ι_v, ε_w⟧ = ⟨v,w⟩·1.
        let v = rand_vec(&mut r, n, true);
        let w = rand_vec(&mut r, n, true);
        let (vm, wm) = (Multivector::from_vector(n, &v).unwrap(), Multivector::from_vector(n, &w).unwrap());
        let sc = supercommutator(&FockOperator::interior(vm.clone()), &FockOperator::exterior(wm.clone())).unwrap();
        let expect = CMat::identity(16, 16) * vm.inner(&wm).unwrap();
        assert!((dense_matrix(&sc).unwrap() - expect).norm() < 1e-12);
        // M = 1.
        let one = Multivector::one(n);
        let vb = rand_blade(&mut r, n, 3, true);
        assert!(leibniz_supercommutator(&vb, &one).unwrap() < 1e-12);
        assert_eq!(
            leibniz_supercommutator(&Blade::new(e(n, &[1, 2])).unwrap(), &one),
            Err(Error::MissingFactorization)
        );
    }

    #[test]
    fn parity() {
        let n = 4;
        assert_eq!(FockOperator::exterior(e(n, &[1, 2, 3])).parity(), Some(1));
        assert_eq!(FockOperator::interior(e(n, &[1]) + e(n, &[1, 2, 3])).parity(), Some(1));
        assert_eq!(FockOperator::interior(e(n, &[1]) + e(n, &[1, 2])).parity(), None);
        let a = FockOperator::annihilation(&[1, 2, 3], n).unwrap();
        assert_eq!(a.compose(&a).unwrap().parity(), Some(0));
        assert_eq!(FockOperator::identity(n).parity(), Some(0));
        assert!(supercommutator(&FockOperator::interior(e(n, &[1]) + e(n, &[1, 2])), &a).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use rand::Rng;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn interior_is_adjoint_of_exterior(seed in any::<u64>(), n in 1usize..=5) {
                let m = rand_mv(&mut rng(seed), n, 6, true);
                let i = dense_matrix(&FockOperator::interior(m.clone())).unwrap();
                let x = dense_matrix(&FockOperator::exterior(m)).unwrap();
                prop_assert!((i - x.adjoint()).norm() < 1e-12);
            }

            #[test]
            fn odd_and_blade_operators_square_to_zero(seed in any::<u64>(), n in 2usize..=5) {
                let mut r = rng(seed);
                let odd = rand_mv(&mut r, n, 6, true).parity_split().1;
                let p = r.gen_range(1..=n);
                let blade = rand_blade(&mut r, n, p, true).into_mv();
                for m in [odd, blade] {
                    for op in [FockOperator::exterior(m.clone()), FockOperator::interior(m)] {
                        let d = dense_matrix(&op).unwrap();
                        prop_assert!((&d * &d).norm() < 1e-10);
                    }
                }
            }

            #[test]
            fn star_swaps_vacancy_and_occupancy(seed in any::<u64>(), n in 1usize..=6) {
                let mut r = rng(seed);
                let m = rand_mv(&mut r, n, 8, true);
                let i = MultiIndex::from_bits(r.gen_range(0..=full_bits(n)), n).unwrap();
                let o = Orientation::standard(n);
                for star in [Orientation::rstar, Orientation::lstar] {
                    let lhs = star(&o, &FockOperator::vacancy(i).apply(&m).unwrap()).unwrap();
                    let rhs = FockOperator::occupancy(i).apply(&star(&o, &m).unwrap()).unwrap();
                    prop_assert!(lhs.distance(&rhs).unwrap() < 1e-12);
                }
            }

            #[test]
            fn unit_vector_exactness(seed in any::<u64>(), n in 1usize..=6) {
                let mut r = rng(seed);
                let mut v = rand_vec(&mut r, n, true);
                let len = crate::linalg::vnorm(&v);
                prop_assume!(len > 1e-3);
                v.iter_mut().for_each(|x| *x /= len);
                let vm = Multivector::from_vector(n, &v).unwrap();
                let m = rand_mv(&mut r, n, 8, true);
                let (iv, ev) = (FockOperator::interior(vm.clone()), FockOperator::exterior(vm));
                let sum = iv.compose(&ev).unwrap().plus(&ev.compose(&iv).unwrap()).unwrap();
                prop_assert!(sum.apply(&m).unwrap().distance(&m).unwrap() < 1e-12);
            }

            #[test]
            fn leibniz_random(seed in any::<u64>(), n in 2usize..=5) {
                let mut r = rng(seed);
                let p = r.gen_range(1..=n.min(4));
                let b = rand_blade(&mut r, n, p, true);
                let m = rand_mv(&mut r, n, 6, true);
                prop_assert!(leibniz_supercommutator(&b, &m).unwrap() < 1e-10);
            }

            #[test]
            fn closed_form_random_n10(seed in any::<u64>()) {
                let mut r = rng(seed);
                let n = 10;
                let pick = |r: &mut rand_chacha::ChaCha8Rng| MultiIndex::from_bits(r.gen_range(0..=full_bits(n)), n).unwrap();
                let (i, j, k) = (pick(&mut r), pick(&mut r), pick(&mut r));
                let direct = supercommutator_direct(&i, &j, &Multivector::basis(k)).unwrap();
                let closed = supercommutator_closed(&i, &j, &k)
                    .map_or(Multivector::zero(n), |(s, b)| Multivector::basis(b).scale(s as f64));
                prop_assert_eq!(direct, closed);
            }
        }
    }
}
