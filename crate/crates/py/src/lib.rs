use extalg::cli::{self, Field, SessionConfig, Value};
use extalg::fock::{self, FockOperator as CoreFock};
use extalg::geometry::{asym_angle_cos, principal_angles as core_principal_angles};
use extalg::grades::{cartan_residual, grade_profile, is_simple, plucker_worst};
use extalg::multiindex::{self, bits_to_indices, MultiIndex};
use extalg::outermorphism::Outermorphism as CoreOutermorphism;
use extalg::spaces::{carve_minimal, factorize_maximal, inner_space, outer_space, SubspaceBasis};
use extalg::star::{self, Orientation};
use extalg::{Blade, Multivector as CoreMv};
use num_complex::Complex64;
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn mi(indices: &[usize], n: usize) -> PyResult<MultiIndex> {
    if !indices.windows(2).all(|w| w[0] < w[1]) {
        return Err(PyValueError::new_err("indices must be strictly increasing"));
    }
    MultiIndex::from_indices(indices, n).map_err(err)
}

fn orientation(n: usize, unit: Option<Complex64>) -> PyResult<Orientation> {
    Orientation::new(n, unit.unwrap_or(Complex64::new(1.0, 0.0))).map_err(err)
}

fn space_vectors(s: &SubspaceBasis) -> Vec<Vec<Complex64>> {
    s.echelon()
}

/// Sparse multivector over `R^n` or `C^n`, basis blades labelled by
/// increasing 1-based index tuples.
#[pyclass(name = "Multivector", module = "extalg_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyMultivector {
    inner: CoreMv,
}

impl From<CoreMv> for PyMultivector {
    fn from(inner: CoreMv) -> Self {
        PyMultivector { inner }
    }
}

impl PyMultivector {
    fn blade(&self) -> PyResult<Blade> {
        Blade::factorized(self.inner.clone()).map_err(err)
    }
}

#[pymethods]
impl PyMultivector {
    #[new]
    #[pyo3(signature = (n, terms=Vec::new()))]
    fn new(n: usize, terms: Vec<(Vec<usize>, Complex64)>) -> PyResult<Self> {
        let mut acc = CoreMv::zero(n);
        for (idx, c) in terms {
            let sorted = {
                let mut s = idx.clone();
                s.sort_unstable();
                s
            };
            let sign = multiindex::epsilon(&idx);
            if sign == 0 {
                return Err(PyValueError::new_err(format!("repeated index in {idx:?}")));
            }
            let b = CoreMv::basis(mi(&sorted, n)?).scale(c * sign as f64);
            acc = acc.try_add(&b).map_err(err)?;
        }
        Ok(acc.into())
    }

    #[staticmethod]
    #[pyo3(signature = (n, *indices))]
    fn e(n: usize, indices: Vec<usize>) -> PyResult<Self> {
        CoreMv::e(n, &indices).map(Into::into).map_err(err)
    }

    #[staticmethod]
    fn scalar(n: usize, value: Complex64) -> PyResult<Self> {
        if n == 0 || n > multiindex::MAX_DIM {
            return Err(err(extalg::Error::BadDimension(n)));
        }
        Ok(CoreMv::scalar(n, value).into())
    }

    #[staticmethod]
    fn vector(coords: Vec<Complex64>) -> PyResult<Self> {
        CoreMv::from_vector(coords.len(), &coords).map(Into::into).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (text, tol=1e-12))]
    fn from_json(text: &str, tol: f64) -> PyResult<Self> {
        cli::parse_json_mv(text, tol).map(Into::into).map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// `(indices, coefficient)` pairs in lexicographic order of the indices.
    fn terms(&self) -> Vec<(Vec<usize>, Complex64)> {
        let j = cli::mv_to_json(&self.inner, Field::Complex);
        j.terms.into_iter().map(|t| (t.indices, Complex64::new(t.re, t.im))).collect()
    }

    #[pyo3(signature = (*indices))]
    fn coeff(&self, indices: Vec<usize>) -> PyResult<Complex64> {
        Ok(self.inner.coeff(mi(&indices, self.inner.dim())?.bits()))
    }

    #[pyo3(signature = (complex=true))]
    fn to_json(&self, complex: bool) -> String {
        let field = if complex { Field::Complex } else { Field::Real };
        serde_json::to_string(&cli::mv_to_json(&self.inner, field)).expect("plain data")
    }

    fn norm(&self) -> f64 {
        self.inner.norm()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn inner(&self, other: &Self) -> PyResult<Complex64> {
        self.inner.inner(&other.inner).map_err(err)
    }

    fn wedge(&self, other: &Self) -> PyResult<Self> {
        self.inner.wedge(&other.inner).map(Into::into).map_err(err)
    }

    /// `self ⌋ other`.
    fn lcontr(&self, other: &Self) -> PyResult<Self> {
        self.inner.lcontr(&other.inner).map(Into::into).map_err(err)
    }

    /// `self ⌞ other`.
    fn rcontr(&self, other: &Self) -> PyResult<Self> {
        self.inner.rcontr(&other.inner).map(Into::into).map_err(err)
    }

    fn grade(&self, p: isize) -> Self {
        self.inner.grade_project(p).into()
    }

    fn grade_involution(&self) -> Self {
        self.inner.grade_involution().into()
    }

    fn reversion(&self) -> Self {
        self.inner.reversion().into()
    }

    fn clifford_conjugate(&self) -> Self {
        self.inner.clifford_conjugate().into()
    }

    fn conj(&self) -> Self {
        self.inner.conj().into()
    }

    #[pyo3(signature = (unit=None))]
    fn rstar(&self, unit: Option<Complex64>) -> PyResult<Self> {
        orientation(self.inner.dim(), unit)?.rstar(&self.inner).map(Into::into).map_err(err)
    }

    #[pyo3(signature = (unit=None))]
    fn lstar(&self, unit: Option<Complex64>) -> PyResult<Self> {
        orientation(self.inner.dim(), unit)?.lstar(&self.inner).map(Into::into).map_err(err)
    }

    #[pyo3(signature = (other, unit=None))]
    fn regressive(&self, other: &Self, unit: Option<Complex64>) -> PyResult<Self> {
        let o = orientation(self.inner.dim(), unit)?;
        star::regressive(&self.inner, &other.inner, &o).map(Into::into).map_err(err)
    }

    fn join(&self, other: &Self) -> PyResult<Self> {
        star::join(&self.blade()?, &other.blade()?).map(|b| b.into_mv().into()).map_err(err)
    }

    fn meet(&self, other: &Self) -> PyResult<Self> {
        let (a, b) = (self.blade()?, other.blade()?);
        let j = star::join(&a, &b).map_err(err)?;
        star::meet(&a, &b, &j).map(Into::into).map_err(err)
    }

    fn inner_space(&self) -> Vec<Vec<Complex64>> {
        space_vectors(&inner_space(&self.inner))
    }

    fn outer_space(&self) -> Vec<Vec<Complex64>> {
        space_vectors(&outer_space(&self.inner))
    }

    /// `(inner, bottom, top, outer)`; bottom and top are `None` for zero.
    fn grades(&self) -> (usize, Option<usize>, Option<usize>, usize) {
        let g = grade_profile(&self.inner);
        (g.inner, g.bottom, g.top, g.outer)
    }

    fn is_simple(&self) -> bool {
        is_simple(&self.inner)
    }

    fn plucker_residual(&self) -> PyResult<f64> {
        plucker_worst(&self.inner).map_err(err)
    }

    fn cartan_residual(&self) -> PyResult<f64> {
        cartan_residual(&self.inner).map_err(err)
    }

    /// Optimal factorization `self = B ∧ N`, returned as `(B, N)`.
    fn factorize(&self) -> PyResult<(Self, Self)> {
        let f = factorize_maximal(&self.inner).map_err(err)?;
        Ok((f.b.into_mv().into(), f.n.into()))
    }

    /// Optimal carving `self = N ⌋ B`, returned as `(B, N)`.
    fn carve(&self) -> PyResult<(Self, Self)> {
        let c = carve_minimal(&self.inner).map_err(err)?;
        Ok((c.b.into_mv().into(), c.n.into()))
    }

    /// `(oriented, unoriented)` cosine of the asymmetric angle from `self` to `other`.
    fn angle_cos(&self, other: &Self) -> PyResult<(Complex64, f64)> {
        asym_angle_cos(&self.blade()?, &other.blade()?).map_err(err)
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.inner.approx_eq(&other.inner, tol)
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.inner.try_add(&other.inner).map(Into::into).map_err(err)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.inner.try_sub(&other.inner).map(Into::into).map_err(err)
    }

    fn __neg__(&self) -> Self {
        (-&self.inner).into()
    }

    fn __mul__(&self, s: Complex64) -> Self {
        self.inner.scale(s).into()
    }

    fn __rmul__(&self, s: Complex64) -> Self {
        self.inner.scale(s).into()
    }

    fn __truediv__(&self, s: Complex64) -> PyResult<Self> {
        if s == Complex64::new(0.0, 0.0) {
            return Err(PyValueError::new_err("division by zero"));
        }
        Ok(self.inner.scale(s.inv()).into())
    }

    fn __xor__(&self, other: &Self) -> PyResult<Self> {
        self.wedge(other)
    }

    fn __lshift__(&self, other: &Self) -> PyResult<Self> {
        self.lcontr(other)
    }

    fn __rshift__(&self, other: &Self) -> PyResult<Self> {
        self.rcontr(other)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Multivector({}, {})", self.inner.dim(), self.inner)
    }
}

/// Linear map `C^n → C^m` acting on multivectors as an outermorphism.
#[pyclass(name = "Outermorphism", module = "extalg_py", frozen)]
pub struct PyOutermorphism {
    inner: CoreOutermorphism,
}

#[pymethods]
impl PyOutermorphism {
    #[new]
    fn new(rows: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n) {
            return Err(PyValueError::new_err("ragged matrix"));
        }
        let mat = nalgebra::DMatrix::from_fn(m, n, |i, j| rows[i][j]);
        CoreOutermorphism::new(mat).map(|inner| PyOutermorphism { inner }).map_err(err)
    }

    fn apply(&self, m: &PyMultivector) -> PyResult<PyMultivector> {
        self.inner.apply(&m.inner).map(Into::into).map_err(err)
    }

    fn adjoint(&self) -> Self {
        PyOutermorphism { inner: self.inner.adjoint() }
    }

    fn det(&self) -> PyResult<Complex64> {
        self.inner.det().map_err(err)
    }

    fn volume_factor(&self) -> f64 {
        self.inner.volume_factor()
    }

    #[pyo3(signature = (m, unit=None))]
    fn inverse_apply(&self, m: &PyMultivector, unit: Option<Complex64>) -> PyResult<PyMultivector> {
        let o = orientation(self.inner.dim_in(), unit)?;
        self.inner.inverse_apply(&m.inner, &o).map(Into::into).map_err(err)
    }
}

/// Operator on the exterior algebra: exterior/interior products, ladder
/// operators and their combinations.
#[pyclass(name = "FockOperator", module = "extalg_py", frozen)]
pub struct PyFockOperator {
    inner: CoreFock,
}

impl From<CoreFock> for PyFockOperator {
    fn from(inner: CoreFock) -> Self {
        PyFockOperator { inner }
    }
}

#[pymethods]
impl PyFockOperator {
    #[staticmethod]
    fn exterior(m: &PyMultivector) -> Self {
        CoreFock::exterior(m.inner.clone()).into()
    }

    #[staticmethod]
    fn interior(m: &PyMultivector) -> Self {
        CoreFock::interior(m.inner.clone()).into()
    }

    #[staticmethod]
    fn creation(indices: Vec<usize>, n: usize) -> PyResult<Self> {
        CoreFock::creation(&indices, n).map(Into::into).map_err(err)
    }

    #[staticmethod]
    fn annihilation(indices: Vec<usize>, n: usize) -> PyResult<Self> {
        CoreFock::annihilation(&indices, n).map(Into::into).map_err(err)
    }

    #[staticmethod]
    fn occupancy(indices: Vec<usize>, n: usize) -> PyResult<Self> {
        Ok(CoreFock::occupancy(mi(&indices, n)?).into())
    }

    #[staticmethod]
    fn vacancy(indices: Vec<usize>, n: usize) -> PyResult<Self> {
        Ok(CoreFock::vacancy(mi(&indices, n)?).into())
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        CoreFock::identity(n).into()
    }

    fn apply(&self, m: &PyMultivector) -> PyResult<PyMultivector> {
        self.inner.apply(&m.inner).map(Into::into).map_err(err)
    }

    /// `self ∘ other`.
    fn compose(&self, other: &Self) -> PyResult<Self> {
        self.inner.compose(&other.inner).map(Into::into).map_err(err)
    }

    fn supercommutator(&self, other: &Self) -> PyResult<Self> {
        fock::supercommutator(&self.inner, &other.inner).map(Into::into).map_err(err)
    }

    fn parity(&self) -> Option<usize> {
        self.inner.parity()
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.inner.plus(&other.inner).map(Into::into).map_err(err)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.inner.minus(&other.inner).map(Into::into).map_err(err)
    }

    fn __mul__(&self, s: Complex64) -> Self {
        self.inner.scale(s).into()
    }

    fn __rmul__(&self, s: Complex64) -> Self {
        self.inner.scale(s).into()
    }

    fn __matmul__(&self, other: &Self) -> PyResult<Self> {
        self.compose(other)
    }

    fn __call__(&self, m: &PyMultivector) -> PyResult<PyMultivector> {
        self.apply(m)
    }
}

/// Sign of the permutation sorting `seq`; 0 if an index repeats.
#[pyfunction]
fn epsilon(seq: Vec<usize>) -> i8 {
    multiindex::epsilon(&seq)
}

#[pyfunction]
fn pairs(r: Vec<usize>, s: Vec<usize>) -> usize {
    multiindex::pairs(&r, &s)
}

/// Closed form of the supercommutator of `a_i†` and `a_j` applied to `e_k`:
/// `None` for zero, else `(sign, indices)`.
#[pyfunction]
fn supercommutator_basis(n: usize, i: Vec<usize>, j: Vec<usize>, k: Vec<usize>) -> PyResult<Option<(i8, Vec<usize>)>> {
    let out = fock::supercommutator_closed(&mi(&i, n)?, &mi(&j, n)?, &mi(&k, n)?);
    Ok(out.map(|(s, r)| (s, bits_to_indices(r.bits()).collect())))
}

/// Principal cosines between the spans of two lists of vectors.
#[pyfunction]
fn principal_cosines(v: Vec<Vec<Complex64>>, w: Vec<Vec<Complex64>>) -> PyResult<Vec<f64>> {
    let n = v.first().or(w.first()).map_or(0, |x| x.len());
    core_principal_angles(n, &v, &w).map(|pd| pd.cosines).map_err(err)
}

/// Evaluates a calculator expression; returns a `Multivector`, a list of
/// basis vectors for subspace results, or a bool.
#[pyfunction]
#[pyo3(signature = (expr, n, complex=false))]
fn evaluate(py: Python<'_>, expr: &str, n: usize, complex: bool) -> PyResult<Py<PyAny>> {
    let field = if complex { Field::Complex } else { Field::Real };
    let cfg = SessionConfig::new(n, field).map_err(err)?;
    let ast = cli::parse(expr, &cfg).map_err(err)?;
    let value = cli::eval(&ast, &cfg).map_err(|e| match e {
        cli::EvalError::Type(msg) => PyTypeError::new_err(msg),
        e => err(e),
    })?;
    Ok(match value {
        Value::Mv(m) => Py::new(py, PyMultivector::from(m))?.into_any(),
        Value::Space(s) => space_vectors(&s).into_pyobject(py)?.into_any().unbind(),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any().unbind(),
    })
}

#[pymodule]
fn extalg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMultivector>()?;
    m.add_class::<PyOutermorphism>()?;
    m.add_class::<PyFockOperator>()?;
    m.add_function(wrap_pyfunction!(epsilon, m)?)?;
    m.add_function(wrap_pyfunction!(pairs, m)?)?;
    m.add_function(wrap_pyfunction!(supercommutator_basis, m)?)?;
    m.add_function(wrap_pyfunction!(principal_cosines, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    Ok(())
}
