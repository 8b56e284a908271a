//! Star operators, regressive product, join and meet.

use crate::error::{Error, Result};
use crate::linalg::{self, RANK_TOL};
use crate::multiindex::{check_dim, concat_sign_bits, full_bits};
use crate::multivector::{Blade, Multivector, Scalar};
use crate::spaces::outer_space;

/// Tolerance for unit-norm checks on orientations and blades.
const UNIT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `Ω = unit · e_{1…n}` with `|unit| = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Orientation {
    unit: Scalar,
    n: usize,
}

impl Orientation {
    pub fn new(n: usize, unit: Scalar) -> Result<Self> {
        check_dim(n)?;
        if (unit.norm() - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnit("orientation"));
        }
        Ok(Orientation { unit, n })
    }

    pub fn standard(n: usize) -> Self {
        Orientation::new(n, Scalar::new(1.0, 0.0)).expect("valid dimension")
    }

    pub fn unit(&self) -> Scalar {
        self.unit
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn omega(&self) -> Multivector {
        Multivector::basis_bits(self.n, full_bits(self.n), self.unit)
    }

    /// `M★ = M⌋Ω`.
    pub fn rstar(&self, m: &Multivector) -> Result<Multivector> {
        m.lcontr(&self.omega())
    }

    /// `★M = Ω⌟M`.
    pub fn lstar(&self, m: &Multivector) -> Result<Multivector> {
        self.omega().rcontr(m)
    }
}

pub fn star(m: &Multivector, side: Side, omega: &Orientation) -> Result<Multivector> {
    match side {
        Side::Left => omega.lstar(m),
        Side::Right => omega.rstar(m),
    }
}

/// Star relative to a unit blade `B`: `B⌟M` (left) or `M⌋B` (right).
pub fn star_wrt_blade(m: &Multivector, side: Side, b: &Multivector) -> Result<Multivector> {
    if (b.norm() - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnit("blade"));
    }
    match side {
        Side::Left => b.rcontr(m),
        Side::Right => m.lcontr(b),
    }
}

/// `M∨N`, from `e_i∨e_j = δ_{i∪j=1…n} ε_{(i−j)(j−i)} e_{i∩j}` (scaled by the
/// conjugate unit for a non-standard orientation).
pub fn regressive(m: &Multivector, nn: &Multivector, omega: &Orientation) -> Result<Multivector> {
    let n = m.dim();
    if nn.dim() != n {
        return Err(Error::AmbientMismatch(n, nn.dim()));
    }
    if omega.dim() != n {
        return Err(Error::AmbientMismatch(n, omega.dim()));
    }
    let all = full_bits(n);
    let u = omega.unit().conj();
    let mut terms = Vec::new();
    for (i, a) in m.terms() {
        for (j, b) in nn.terms() {
            if i | j == all {
                let s = concat_sign_bits(i & !j, j & !i) as f64;
                terms.push((i & j, a * b * u * s));
            }
        }
    }
    Ok(Multivector::from_terms(n, terms))
}

/// Unit blade spanning `[A] + [B]`, by Gram-Schmidt over the columns of the
/// outer-space bases of `A` then `B`.
pub fn join(a: &Blade, b: &Blade) -> Result<Blade> {
    if a.mv().is_zero() || b.mv().is_zero() {
        return Err(Error::ZeroInput("blade"));
    }
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::AmbientMismatch(n, b.dim()));
    }
    let mut cols = basis_of(a);
    cols.extend(basis_of(b));
    let q = linalg::gram_schmidt(&cols, RANK_TOL);
    Blade::from_vectors(n, q)
}

fn basis_of(b: &Blade) -> Vec<Vec<Scalar>> {
    match b.vectors() {
        Some(v) => v.to_vec(),
        None => outer_space(b.mv()).into_columns(),
    }
}

/// `A∩B = (J⌟B)⌋A`, for a unit blade `J` with `[J] ⊇ [A] + [B]`.
pub fn meet(a: &Blade, b: &Blade, j: &Blade) -> Result<Multivector> {
    if a.mv().is_zero() || b.mv().is_zero() {
        return Err(Error::ZeroInput("blade"));
    }
    star_wrt_blade(b.mv(), Side::Left, j.mv())?.lcontr(a.mv())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry;
    use crate::multivector::testutil::*;

    #[test]
    fn star_table() {
        let o = Orientation::standard(4);
        let cases: [(&[usize], &[usize], f64, f64); 5] = [
            (&[1], &[2, 3, 4], 1.0, -1.0),
            (&[2], &[1, 3, 4], -1.0, 1.0),
            (&[1, 2], &[3, 4], 1.0, 1.0),
            (&[3, 4], &[1, 2], 1.0, 1.0),
            (&[2, 3, 4], &[1], -1.0, 1.0),
        ];
        for (src, dst, rs, ls) in cases {
            assert_eq!(o.rstar(&e(4, src)).unwrap(), e(4, dst).scale(rs));
            assert_eq!(o.lstar(&e(4, src)).unwrap(), e(4, dst).scale(ls));
        }
        assert_eq!(o.rstar(&Multivector::one(4)).unwrap(), o.omega());
        assert_eq!(o.rstar(&o.omega()).unwrap(), Multivector::one(4));
    }

    #[test]
    fn star_basis_rule() {
        for n in 1..=6 {
            let o = Orientation::standard(n);
            for i in 0..=full_bits(n) {
                let ic = full_bits(n) & !i;
                let b = Multivector::basis_bits(n, i, Scalar::new(1.0, 0.0));
                let r = Multivector::basis_bits(n, ic, Scalar::new(concat_sign_bits(i, ic) as f64, 0.0));
                let l = Multivector::basis_bits(n, ic, Scalar::new(concat_sign_bits(ic, i) as f64, 0.0));
                assert_eq!(o.rstar(&b).unwrap(), r);
                assert_eq!(o.lstar(&b).unwrap(), l);
            }
        }
    }

    #[test]
    fn regressive_examples() {
        let o = Orientation::standard(4);
        assert_eq!(regressive(&e(4, &[1, 4]), &e(4, &[1, 2, 3]), &o).unwrap(), e(4, &[1]));

        let s3 = 3f64.sqrt();
        let a = (e(4, &[1, 2]) + e(4, &[1, 4]).scale(s3) - e(4, &[2, 3]) + e(4, &[3, 4]).scale(s3))
            .scale(1.0 / (2.0 * 2f64.sqrt()));
        let v = regressive(&a, &e(4, &[1, 2]), &o).unwrap();
        assert!(v.approx_eq(&Multivector::scalar(4, 6f64.sqrt() / 4.0), 1e-12));

        let a = e(4, &[1]).wedge(&(e(4, &[2]) + e(4, &[4]))).unwrap().wedge(&(e(4, &[3]) + e(4, &[4]))).unwrap();
        let v = regressive(&a, &e(4, &[1, 2, 3]), &o).unwrap();
        let expect = e(4, &[1]).wedge(&(e(4, &[3]) - e(4, &[2]))).unwrap();
        assert!(v.approx_eq(&expect, 1e-12));
    }

    #[test]
    fn meet_and_join() {
        let n = 4;
        let a = Blade::new((e(n, &[1]) + e(n, &[4])).wedge(&(e(n, &[2]) + e(n, &[4]).scale(2.0))).unwrap()).unwrap();
        let b = Blade::new(e(n, &[1, 2])).unwrap();
        let j = Blade::new(e(n, &[1, 2, 4])).unwrap();
        let m = meet(&a, &b, &j).unwrap();
        assert_eq!(m, e(n, &[1]).scale(-2.0) + e(n, &[2]));
        let rebuilt = m.lcontr(a.mv()).unwrap().wedge(b.mv()).unwrap();
        assert!(outer_space(&rebuilt).same_as(&outer_space(a.mv()).sum(&outer_space(b.mv()))));

        let j2 = join(&Blade::new(e(3, &[1])).unwrap(), &Blade::new(e(3, &[2])).unwrap()).unwrap();
        assert!(j2.mv().approx_eq(&e(3, &[1, 2]), 1e-12) || j2.mv().approx_eq(&-e(3, &[1, 2]), 1e-12));
        let jab = join(&a, &b).unwrap();
        assert!((jab.mv().norm() - 1.0).abs() < 1e-12);
        assert!(outer_space(jab.mv()).same_as(&outer_space(j.mv())));
        assert!(join(&a, &Blade::new(Multivector::zero(n)).unwrap()).is_err());
    }

    #[test]
    fn orientation_checks() {
        assert!(Orientation::new(3, Scalar::new(2.0, 0.0)).is_err());
        let o = Orientation::new(3, Scalar::new(0.6, 0.8)).unwrap();
        let m = rand_mv(&mut rng(2), 3, 6, true);
        let nn = rand_mv(&mut rng(3), 3, 6, true);
        let via_def = o.lstar(&o.rstar(&m).unwrap().wedge(&o.rstar(&nn).unwrap()).unwrap()).unwrap();
        assert!(regressive(&m, &nn, &o).unwrap().approx_eq(&via_def, 1e-12));
        assert!(star_wrt_blade(&m, Side::Left, &e(3, &[1, 2]).scale(2.0)).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use rand::Rng;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn anti_unitary(seed in any::<u64>(), n in 1usize..=6) {
                let mut r = rng(seed);
                let o = Orientation::standard(n);
                let m = rand_mv(&mut r, n, 6, true);
                let nn = rand_mv(&mut r, n, 6, true);
                let lhs = o.rstar(&m).unwrap().inner(&o.rstar(&nn).unwrap()).unwrap();
                prop_assert!((lhs - nn.inner(&m).unwrap()).norm() < 1e-10);
                prop_assert!((o.lstar(&m).unwrap().norm() - m.norm()).abs() < 1e-10);
                prop_assert!(o.lstar(&o.rstar(&m).unwrap()).unwrap().approx_eq(&m, 1e-12));
                prop_assert!(o.rstar(&o.lstar(&m).unwrap()).unwrap().approx_eq(&m, 1e-12));
            }

            #[test]
            fn duality_exchange(seed in any::<u64>(), n in 1usize..=6, phase in 0.0f64..6.3) {
                let mut r = rng(seed);
                let o = Orientation::new(n, Scalar::from_polar(1.0, phase)).unwrap();
                let m = rand_mv(&mut r, n, 5, true);
                let nn = rand_mv(&mut r, n, 5, true);
                let lhs = o.rstar(&m.wedge(&nn).unwrap()).unwrap();
                prop_assert!(lhs.approx_eq(&nn.lcontr(&o.rstar(&m).unwrap()).unwrap(), 1e-10));
                let lhs = o.rstar(&m.rcontr(&nn).unwrap()).unwrap();
                prop_assert!(lhs.approx_eq(&nn.wedge(&o.rstar(&m).unwrap()).unwrap(), 1e-10));
                let lhs = o.rstar(&m).unwrap().rcontr(&o.rstar(&nn).unwrap()).unwrap();
                prop_assert!(lhs.approx_eq(&m.lcontr(&nn).unwrap(), 1e-10));
            }

            #[test]
            fn wedge_with_star(seed in any::<u64>(), n in 1usize..=6, p in 0usize..=6) {
                let p = p.min(n);
                let mut r = rng(seed);
                let o = Orientation::standard(n);
                let g = rand_mv(&mut r, n, 6, true).grade_project(p as isize);
                let h = rand_mv(&mut r, n, 6, true).grade_project(p as isize);
                let lhs = g.wedge(&o.rstar(&h).unwrap()).unwrap();
                prop_assert!(lhs.approx_eq(&o.omega().scale(h.inner(&g).unwrap()), 1e-10));
            }

            #[test]
            fn double_star(seed in any::<u64>(), n in 1usize..=7) {
                let m = rand_mv(&mut rng(seed), n, 6, true);
                let o = Orientation::standard(n);
                let ll = o.lstar(&o.lstar(&m).unwrap()).unwrap();
                let rr = o.rstar(&o.rstar(&m).unwrap()).unwrap();
                prop_assert!(ll.approx_eq(&m.check(), 1e-12));
                prop_assert!(rr.approx_eq(&m.check(), 1e-12));
                let (even, _) = m.parity_split();
                prop_assert!(o.lstar(&even).unwrap().approx_eq(&o.rstar(&even).unwrap(), 1e-12));
                if n % 2 == 1 {
                    prop_assert!(o.lstar(&m).unwrap().approx_eq(&o.rstar(&m).unwrap(), 1e-12));
                }
            }

            #[test]
            fn star_characterizes_blades(seed in any::<u64>(), n in 2usize..=6, p in 1usize..=5) {
                let p = p.min(n - 1);
                let mut r = rng(seed);
                let b = rand_blade(&mut r, n, p, false);
                let o = Orientation::standard(n);
                let s = o.lstar(b.mv()).unwrap();
                prop_assert!(outer_space(&s).same_as(&outer_space(b.mv()).complement()));
                prop_assert!((s.norm() - b.mv().norm()).abs() < 1e-10);
                let vol = s.wedge(b.mv()).unwrap().inner(&o.omega()).unwrap();
                prop_assert!(vol.re > 0.0);
            }

            #[test]
            fn blade_relative_star(seed in any::<u64>(), n in 2usize..=6) {
                let mut r = rng(seed);
                let q = r.gen_range(1..=n);
                let bb = rand_blade(&mut r, n, q, true);
                let b = bb.mv().scale(1.0 / bb.mv().norm());
                let m = rand_mv(&mut r, n, 5, true);
                let nn = rand_mv(&mut r, n, 5, true);
                let lhs = star_wrt_blade(&m.wedge(&nn).unwrap(), Side::Right, &b).unwrap();
                let rhs = nn.lcontr(&star_wrt_blade(&m, Side::Right, &b).unwrap()).unwrap();
                prop_assert!(lhs.approx_eq(&rhs, 1e-10));
                let pm = geometry::project_blade(&m, &b).unwrap();
                prop_assert!(star_wrt_blade(&pm, Side::Right, &b).unwrap()
                    .approx_eq(&star_wrt_blade(&m, Side::Right, &b).unwrap(), 1e-10));
                // A ⊂ B: take A as a subblade of B's factorization.
                let a = Blade::from_vectors(n, bb.vectors().unwrap()[..1].to_vec()).unwrap();
                let lhs = star_wrt_blade(&a.mv().rcontr(&nn).unwrap(), Side::Right, &b).unwrap();
                let pan = geometry::project_blade(&nn, a.mv()).unwrap();
                let rhs = pan.wedge(&star_wrt_blade(a.mv(), Side::Right, &b).unwrap()).unwrap();
                prop_assert!(lhs.approx_eq(&rhs, 1e-9));
            }

            #[test]
            fn regressive_associative(seed in any::<u64>(), n in 1usize..=6) {
                let mut r = rng(seed);
                let o = Orientation::standard(n);
                let a = rand_mv(&mut r, n, 6, true);
                let b = rand_mv(&mut r, n, 6, true);
                let c = rand_mv(&mut r, n, 6, true);
                let lhs = regressive(&regressive(&a, &b, &o).unwrap(), &c, &o).unwrap();
                let rhs = regressive(&a, &regressive(&b, &c, &o).unwrap(), &o).unwrap();
                prop_assert!(lhs.approx_eq(&rhs, 1e-10));
                let via_def = o.lstar(&o.rstar(&a).unwrap().wedge(&o.rstar(&b).unwrap()).unwrap()).unwrap();
                prop_assert!(regressive(&a, &b, &o).unwrap().approx_eq(&via_def, 1e-10));
            }
        }
    }
}
