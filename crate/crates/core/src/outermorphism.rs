//! Linear maps extended to the whole exterior algebra.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::multiindex::full_bits;
use crate::multivector::{Multivector, Scalar};
use crate::star::Orientation;

/// Relative singular-value cutoff below which a matrix counts as singular.
pub const INVERTIBLE_TOL: f64 = 1e-10;

/// `T: Cⁿ → Cᵐ` given by an `m × n` matrix, acting on multivectors by
/// `T(v₁∧…∧v_p) = Tv₁∧…∧Tv_p`.
///
/// Images of basis blades are memoized as they are requested.
#[derive(Debug)]
pub struct Outermorphism {
    matrix: CMat,
    cache: Mutex<HashMap<u32, Multivector>>,
}

impl Clone for Outermorphism {
    fn clone(&self) -> Self {
        Outermorphism::from_matrix(self.matrix.clone())
    }
}

impl PartialEq for Outermorphism {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Outermorphism {
    pub fn new(matrix: CMat) -> Result<Self> {
        crate::multiindex::check_dim(matrix.nrows())?;
        crate::multiindex::check_dim(matrix.ncols())?;
        Ok(Self::from_matrix(matrix))
    }

    fn from_matrix(matrix: CMat) -> Self {
        Outermorphism { matrix, cache: Mutex::new(HashMap::new()) }
    }

    /// Rows given as real numbers.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        for r in rows {
            if r.len() != n {
                return Err(Error::LengthMismatch { expected: n, got: r.len() });
            }
        }
        Self::new(CMat::from_fn(m, n, |i, j| Scalar::new(rows[i][j], 0.0)))
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(CMat::identity(n, n))
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn dim_in(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn dim_out(&self) -> usize {
        self.matrix.nrows()
    }

    fn column(&self, k: usize) -> Multivector {
        let col: Vec<Scalar> = self.matrix.column(k).iter().copied().collect();
        Multivector::from_vector(self.dim_out(), &col).expect("column length matches")
    }

    /// `T(e_bits)`.
    fn image(&self, bits: u32) -> Multivector {
        if let Some(v) = self.cache.lock().expect("cache lock").get(&bits) {
            return v.clone();
        }
        let out = if bits == 0 {
            Multivector::one(self.dim_out())
        } else {
            let low = bits.trailing_zeros() as usize;
            self.column(low).wedge(&self.image(bits & (bits - 1))).expect("same dimension")
        };
        self.cache.lock().expect("cache lock").insert(bits, out.clone());
        out
    }

    pub fn apply(&self, m: &Multivector) -> Result<Multivector> {
        if m.dim() != self.dim_in() {
            return Err(Error::AmbientMismatch(self.dim_in(), m.dim()));
        }
        let mut out = Multivector::zero(self.dim_out());
        for (bits, c) in m.terms() {
            out += &self.image(bits).scale(c);
        }
        Ok(out)
    }

    /// `T*`, with `⟨M, T*N⟩ = ⟨TM, N⟩`.
    pub fn adjoint(&self) -> Self {
        Self::from_matrix(self.matrix.adjoint())
    }

    fn require_square(&self) -> Result<usize> {
        if self.dim_in() != self.dim_out() {
            return Err(Error::NotSquare);
        }
        Ok(self.dim_in())
    }

    /// Coefficient of `e_{1…n}` in `T e_{1…n}`.
    pub fn det(&self) -> Result<Scalar> {
        let n = self.require_square()?;
        Ok(self.image(full_bits(n)).coeff(full_bits(n)))
    }

    /// `‖TΩ‖` for a unit `n`-vector `Ω`.
    pub fn volume_factor(&self) -> f64 {
        self.image(full_bits(self.dim_in())).norm()
    }

    /// `Ω_T = TΩ / ‖TΩ‖` for a square map.
    pub fn induced_orientation(&self, omega: &Orientation) -> Result<Orientation> {
        let n = self.require_square()?;
        if omega.dim() != n {
            return Err(Error::AmbientMismatch(n, omega.dim()));
        }
        if !self.is_invertible() {
            return Err(Error::Singular);
        }
        let d = self.det()?;
        Orientation::new(n, omega.unit() * d / d.norm())
    }

    pub fn is_invertible(&self) -> bool {
        if self.dim_in() != self.dim_out() || self.dim_in() == 0 {
            return self.dim_in() == self.dim_out();
        }
        let (sv, _) = crate::linalg::svd_right(&self.matrix);
        let top = sv[0];
        top > 0.0 && sv[sv.len() - 1] > INVERTIBLE_TOL * top
    }

    /// `T⁻¹N = (1/vf T)·★(T*(N★_T))`, with `★_T` the right star of the
    /// induced orientation.
    pub fn inverse_apply(&self, nn: &Multivector, omega: &Orientation) -> Result<Multivector> {
        let omega_t = self.induced_orientation(omega)?;
        let inner = self.adjoint().apply(&omega_t.rstar(nn)?)?;
        Ok(omega.lstar(&inner)?.scale(1.0 / self.volume_factor()))
    }
}
