//! Python module `a4lattice`: golden integers, icosians, counting functions,
//! SSL/CSL construction and the oracles.

use a4_core::counting::{self, check_soc_identity, check_ssl_identity};
use a4_core::geometry::{self, cartan_a4, dual_lattice_gram, Denominator};
use a4_core::golden::{self, GoldenInt};
use a4_core::icosian::{self, Icosian};
use a4_core::oracles;
use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// `a + bτ` with `τ² = τ + 1`.
#[pyclass(name = "GoldenInt", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct PyGoldenInt(GoldenInt);

#[pymethods]
impl PyGoldenInt {
    #[new]
    #[pyo3(signature = (a, b = 0))]
    fn new(a: i64, b: i64) -> Self {
        PyGoldenInt(GoldenInt::new(a as i128, b as i128))
    }

    #[getter]
    fn a(&self) -> i128 {
        self.0.a
    }

    #[getter]
    fn b(&self) -> i128 {
        self.0.b
    }

    fn conj(&self) -> Self {
        PyGoldenInt(self.0.conj())
    }

    /// Signed norm `a² + ab − b²`.
    fn norm(&self) -> i128 {
        self.0.norm_signed()
    }

    fn trace(&self) -> i128 {
        self.0.trace()
    }

    fn is_unit(&self) -> bool {
        self.0.is_unit()
    }

    fn is_totally_positive(&self) -> bool {
        self.0.is_totally_positive()
    }

    fn canonical(&self) -> PyResult<Self> {
        if self.0.is_zero() {
            return Err(value_err("zero has no canonical associate"));
        }
        Ok(PyGoldenInt(self.0.canonical()))
    }

    fn gcd(&self, other: &PyGoldenInt) -> PyResult<Self> {
        golden::gcd(self.0, other.0).map(PyGoldenInt).map_err(value_err)
    }

    fn __add__(&self, o: &PyGoldenInt) -> Self {
        PyGoldenInt(self.0 + o.0)
    }

    fn __sub__(&self, o: &PyGoldenInt) -> Self {
        PyGoldenInt(self.0 - o.0)
    }

    fn __mul__(&self, o: &PyGoldenInt) -> Self {
        PyGoldenInt(self.0 * o.0)
    }

    fn __neg__(&self) -> Self {
        PyGoldenInt(-self.0)
    }

    fn __floordiv__(&self, o: &PyGoldenInt) -> PyResult<Self> {
        if o.0.is_zero() {
            return Err(PyZeroDivisionError::new_err("division by zero"));
        }
        Ok(PyGoldenInt(self.0.div_rem(o.0).0))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("GoldenInt({}, {})", self.0.a, self.0.b)
    }
}

/// An icosian, built from its 8 integer coordinates in the Z-basis.
#[pyclass(name = "Icosian", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct PyIcosian(Icosian);

#[pymethods]
impl PyIcosian {
    #[new]
    fn new(z: [i64; 8]) -> Self {
        PyIcosian(Icosian::from_z_coords(z.map(|c| c as i128)))
    }

    #[staticmethod]
    fn from_quat(text: &str) -> PyResult<Self> {
        let q = text.parse().map_err(value_err)?;
        Icosian::from_quat(&q).map(PyIcosian).map_err(value_err)
    }

    #[staticmethod]
    fn units() -> Vec<Self> {
        icosian::norm_one_units().iter().map(|&u| PyIcosian(u)).collect()
    }

    fn z_coords(&self) -> [i128; 8] {
        self.0.z_coords()
    }

    /// Quaternion components as exact strings.
    fn quat(&self) -> String {
        self.0.quat().to_string()
    }

    fn nr(&self) -> PyGoldenInt {
        PyGoldenInt(self.0.nr())
    }

    fn tr(&self) -> PyGoldenInt {
        PyGoldenInt(self.0.tr())
    }

    fn twist(&self) -> Self {
        PyIcosian(self.0.twist())
    }

    fn is_primitive(&self) -> PyResult<bool> {
        self.0.is_primitive().map_err(value_err)
    }

    fn is_admissible(&self) -> PyResult<bool> {
        self.0.is_admissible().map_err(value_err)
    }

    fn is_unit(&self) -> bool {
        self.0.is_unit()
    }

    /// `lcm(nr q, nr q')` as a positive integer.
    fn sigma(&self) -> PyResult<u64> {
        self.0.sigma().map_err(value_err)
    }

    /// Rotation `x ↦ q x q̃ / |q q̃|`, entries as exact strings.
    fn rotation(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(self.0.rotation().map_err(value_err)?.to_strings())
    }

    fn __mul__(&self, o: &PyIcosian) -> Self {
        PyIcosian(self.0.mul(&o.0))
    }

    fn __repr__(&self) -> String {
        format!("Icosian({:?})", self.0.z_coords())
    }
}

fn to_int(x: BigUint) -> BigInt {
    BigInt::from(x)
}

#[pyfunction]
fn f_ssl(m: u64) -> PyResult<BigInt> {
    if m == 0 {
        return Err(value_err("m must be positive"));
    }
    Ok(to_int(counting::f_ssl(m)))
}

#[pyfunction]
fn f_soc(n: u64) -> PyResult<BigInt> {
    if n == 0 {
        return Err(value_err("n must be positive"));
    }
    Ok(to_int(counting::f_soc(n)))
}

/// Coefficients 1..=n of `"ssl"` or `"soc"`.
#[pyfunction]
fn series(kind: &str, n: u64) -> PyResult<Vec<BigInt>> {
    let f = match kind {
        "ssl" => counting::f_ssl,
        "soc" => counting::f_soc,
        _ => return Err(value_err("kind must be 'ssl' or 'soc'")),
    };
    Ok((1..=n).map(|k| to_int(f(k))).collect())
}

/// Checks the Dirichlet series identity up to `n`; raises on mismatch.
#[pyfunction]
fn check_identity(kind: &str, n: u64) -> PyResult<bool> {
    let r = match kind {
        "ssl" => check_ssl_identity(n),
        "soc" => check_soc_identity(n),
        _ => return Err(value_err("kind must be 'ssl' or 'soc'")),
    };
    r.map(|()| true).map_err(value_err)
}

#[pyfunction]
fn representable_ssl_indices(n: u64) -> Vec<u64> {
    counting::representable_ssl_indices(n)
}

#[pyfunction]
fn csl<'py>(py: Python<'py>, q: &PyIcosian) -> PyResult<Bound<'py, PyDict>> {
    let r = geometry::csl_of(&q.0).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("q", q.0.z_coords())?;
    d.set_item("sigma", r.sigma)?;
    d.set_item("hnf", r.csl.hnf_i64())?;
    d.set_item("rotation", r.rotation.to_strings())?;
    d.set_item("alpha", PyGoldenInt(r.extension.alpha))?;
    Ok(d)
}

#[pyfunction]
fn ssl<'py>(py: Python<'py>, p: &PyIcosian) -> PyResult<Bound<'py, PyDict>> {
    let s = geometry::ssl_of(&p.0).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("q", p.0.z_coords())?;
    d.set_item("index", s.index)?;
    d.set_item("hnf", s.hnf_i64())?;
    d.set_item("l_primitive", s.is_l_primitive())?;
    Ok(d)
}

/// Integer denominator, or `None` when it is irrational.
#[pyfunction]
fn denominator(q: &PyIcosian) -> PyResult<Option<u64>> {
    match geometry::denominator_of(&q.0).map_err(value_err)? {
        Denominator::Integer { value } => Ok(Some(value)),
        Denominator::Irrational { .. } => Ok(None),
    }
}

/// Icosians with `nr(q) + nr(q)' = trace_norm`, for `1 <= trace_norm <= 40`.
#[pyfunction]
fn enumerate_icosians(trace_norm: i64) -> PyResult<Vec<PyIcosian>> {
    if !(1..=40).contains(&trace_norm) {
        return Err(value_err("trace_norm must be in 1..=40"));
    }
    Ok(icosian::enumerate_by_trace_norm(trace_norm).into_iter().map(PyIcosian).collect())
}

#[pyfunction]
#[pyo3(signature = (m, dual = false))]
fn oracle_ssl_count(py: Python<'_>, m: u64, dual: bool) -> PyResult<u64> {
    if m == 0 {
        return Err(value_err("m must be positive"));
    }
    let g = if dual { dual_lattice_gram() } else { cartan_a4() };
    Ok(py.detach(|| oracles::oracle_ssl_count(m, &g)))
}

#[pyfunction]
fn oracle_soc_count(py: Python<'_>, n: u64) -> PyResult<u64> {
    if n == 0 {
        return Err(value_err("n must be positive"));
    }
    py.detach(|| oracles::oracle_soc_count(n)).map_err(value_err)
}

/// Runs the verification suite and returns the report as JSON text.
#[pyfunction]
#[pyo3(signature = (max_ssl_m = 5, max_soc_n = 2, csl_samples = 10, seed = 0))]
fn verify(py: Python<'_>, max_ssl_m: u64, max_soc_n: u64, csl_samples: usize, seed: u64) -> String {
    let report = py.detach(|| oracles::verify_all(max_ssl_m, max_soc_n, csl_samples, seed));
    serde_json::to_string(&report).expect("serializable")
}

#[pymodule]
fn a4lattice(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGoldenInt>()?;
    m.add_class::<PyIcosian>()?;
    m.add_function(wrap_pyfunction!(f_ssl, m)?)?;
    m.add_function(wrap_pyfunction!(f_soc, m)?)?;
    m.add_function(wrap_pyfunction!(series, m)?)?;
    m.add_function(wrap_pyfunction!(check_identity, m)?)?;
    m.add_function(wrap_pyfunction!(representable_ssl_indices, m)?)?;
    m.add_function(wrap_pyfunction!(csl, m)?)?;
    m.add_function(wrap_pyfunction!(ssl, m)?)?;
    m.add_function(wrap_pyfunction!(denominator, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_icosians, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_ssl_count, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_soc_count, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
