//! Python bindings for `quon_su2`.
//!
//! Spins are accepted as strings (`"3/2"`), integers or half-integral floats.
//! Matrices come back as nested lists of Python complex numbers, rows first.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use quon_su2::{AlphaLabel, HalfInt, OperatorMatrix, ResidualReport, SpinOperatorSet, VerifyConfig};

fn err(e: quon_su2::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn spin(obj: &Bound<'_, PyAny>) -> PyResult<HalfInt> {
    if let Ok(s) = obj.extract::<String>() {
        return s.parse().map_err(err);
    }
    if let Ok(n) = obj.extract::<i64>() {
        return Ok(HalfInt::from_twice(2 * n as i32));
    }
    let x: f64 = obj.extract()?;
    let twice = (2.0 * x).round();
    if (2.0 * x - twice).abs() > 1e-12 {
        return Err(PyValueError::new_err(format!("{x} is not a half-integer")));
    }
    Ok(HalfInt::from_twice(twice as i32))
}

fn label(j: &Bound<'_, PyAny>, s: usize, r: f64) -> PyResult<(HalfInt, AlphaLabel)> {
    let j = spin(j)?;
    Ok((j, AlphaLabel::new(j, r, s).map_err(err)?))
}

fn rows(op: &OperatorMatrix) -> Vec<Vec<Complex64>> {
    (0..op.dim()).map(|i| (0..op.dim()).map(|j| op.get(i, j)).collect()).collect()
}

fn report_dict<'py>(py: Python<'py>, rep: &ResidualReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    for e in &rep.entries {
        d.set_item(&e.name, e.value)?;
    }
    Ok(d)
}

/// Standard Clebsch-Gordan coefficient `(j1 j2 m1 m2 | j m)` as a float.
#[pyfunction]
fn cg(
    j1: &Bound<'_, PyAny>,
    j2: &Bound<'_, PyAny>,
    m1: &Bound<'_, PyAny>,
    m2: &Bound<'_, PyAny>,
    j: &Bound<'_, PyAny>,
    m: &Bound<'_, PyAny>,
) -> PyResult<f64> {
    Ok(quon_su2::cg(spin(j1)?, spin(j2)?, spin(m1)?, spin(m2)?, spin(j)?, spin(m)?).to_f64())
}

/// Same as `cg`, as an exact string such as `-sqrt(1/3)`.
#[pyfunction]
fn cg_exact(
    j1: &Bound<'_, PyAny>,
    j2: &Bound<'_, PyAny>,
    m1: &Bound<'_, PyAny>,
    m2: &Bound<'_, PyAny>,
    j: &Bound<'_, PyAny>,
    m: &Bound<'_, PyAny>,
) -> PyResult<String> {
    Ok(quon_su2::cg(spin(j1)?, spin(j2)?, spin(m1)?, spin(m2)?, spin(j)?, spin(m)?).to_string())
}

#[pyfunction]
fn threejm(
    j1: &Bound<'_, PyAny>,
    j2: &Bound<'_, PyAny>,
    j3: &Bound<'_, PyAny>,
    m1: &Bound<'_, PyAny>,
    m2: &Bound<'_, PyAny>,
    m3: &Bound<'_, PyAny>,
) -> PyResult<f64> {
    Ok(quon_su2::threejm(spin(j1)?, spin(j2)?, spin(j3)?, spin(m1)?, spin(m2)?, spin(m3)?).to_f64())
}

#[pyfunction]
fn sixj(
    j1: &Bound<'_, PyAny>,
    j2: &Bound<'_, PyAny>,
    j3: &Bound<'_, PyAny>,
    j4: &Bound<'_, PyAny>,
    j5: &Bound<'_, PyAny>,
    j6: &Bound<'_, PyAny>,
) -> PyResult<f64> {
    Ok(quon_su2::sixj(spin(j1)?, spin(j2)?, spin(j3)?, spin(j4)?, spin(j5)?, spin(j6)?).to_f64())
}

/// 9-j symbol from its nine arguments, row by row.
#[pyfunction]
fn ninej(args: Vec<Bound<'_, PyAny>>) -> PyResult<f64> {
    if args.len() != 9 {
        return Err(PyValueError::new_err("ninej takes exactly nine spins"));
    }
    let j: Vec<HalfInt> = args.iter().map(spin).collect::<PyResult<_>>()?;
    Ok(quon_su2::ninej(j[0], j[1], j[2], j[3], j[4], j[5], j[6], j[7], j[8]).to_f64())
}

/// `alpha = -j r + s` for `s = 0, ..., 2j`.
#[pyfunction]
#[pyo3(signature = (j, r=0.0))]
fn alpha_values(j: &Bound<'_, PyAny>, r: f64) -> PyResult<Vec<f64>> {
    Ok(AlphaLabel::all(spin(j)?, r).map_err(err)?.iter().map(AlphaLabel::alpha).collect())
}

/// `<j m | j alpha; r>` with `alpha = -j r + s`.
#[pyfunction]
#[pyo3(signature = (j, m, s, r=0.0))]
fn overlap(j: &Bound<'_, PyAny>, m: &Bound<'_, PyAny>, s: usize, r: f64) -> PyResult<Complex64> {
    let (j, a) = label(j, s, r)?;
    quon_su2::overlap(j, spin(m)?, &a).map_err(err)
}

/// `(j1 j2 alpha1 alpha2 | j alpha; r)`, alphas given by their steps `s`.
#[pyfunction]
#[pyo3(signature = (j1, j2, s1, s2, j, s, r=0.0))]
fn cg_nonstandard(
    j1: &Bound<'_, PyAny>,
    j2: &Bound<'_, PyAny>,
    s1: usize,
    s2: usize,
    j: &Bound<'_, PyAny>,
    s: usize,
    r: f64,
) -> PyResult<Complex64> {
    let (j1, a1) = label(j1, s1, r)?;
    let (j2, a2) = label(j2, s2, r)?;
    let (j, a) = label(j, s, r)?;
    quon_su2::cg_nonstandard(j1, j2, &a1, &a2, j, &a).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (j1, j2, j3, s1, s2, s3, r=0.0))]
fn fbar(
    j1: &Bound<'_, PyAny>,
    j2: &Bound<'_, PyAny>,
    j3: &Bound<'_, PyAny>,
    s1: usize,
    s2: usize,
    s3: usize,
    r: f64,
) -> PyResult<Complex64> {
    let (j1, a1) = label(j1, s1, r)?;
    let (j2, a2) = label(j2, s2, r)?;
    let (j3, a3) = label(j3, s3, r)?;
    quon_su2::fbar(j1, j2, j3, &a1, &a2, &a3).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (j1, j2, j3, s1, s2, s3, r=0.0))]
fn f_small(
    j1: &Bound<'_, PyAny>,
    j2: &Bound<'_, PyAny>,
    j3: &Bound<'_, PyAny>,
    s1: usize,
    s2: usize,
    s3: usize,
    r: f64,
) -> PyResult<Complex64> {
    let (j1, a1) = label(j1, s1, r)?;
    let (j2, a2) = label(j2, s2, r)?;
    let (j3, a3) = label(j3, s3, r)?;
    quon_su2::f_small(j1, j2, j3, &a1, &a2, &a3).map_err(err)
}

/// `H`, `U_r`, `J+`, `J-`, `J3` and `J^2` on the spin-`j` space.
#[pyclass(frozen)]
struct SpinOperators {
    inner: SpinOperatorSet,
}

#[pymethods]
impl SpinOperators {
    #[new]
    #[pyo3(signature = (j, r=0.0))]
    fn new(j: &Bound<'_, PyAny>, r: f64) -> PyResult<Self> {
        let inner = quon_su2::build_spin_ops(spin(j)?, r).map_err(err)?;
        Ok(SpinOperators { inner })
    }

    #[getter]
    fn j(&self) -> String {
        self.inner.space.j.to_string()
    }

    #[getter]
    fn r(&self) -> f64 {
        self.inner.space.r
    }

    #[getter]
    fn phi_r(&self) -> f64 {
        self.inner.space.phi_r
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.space.dim()
    }

    #[staticmethod]
    fn names() -> Vec<&'static str> {
        vec!["H", "U_r", "U_r^dag", "J+", "J-", "J3", "J2"]
    }

    /// One operator by name, in the `m` basis or, with `alpha=True`, in the
    /// `|j, alpha; r>` basis.
    #[pyo3(signature = (name, alpha=false))]
    fn matrix(&self, name: &str, alpha: bool) -> PyResult<Vec<Vec<Complex64>>> {
        let s = &self.inner;
        let op = match name {
            "H" => &s.h,
            "U_r" => &s.u_r,
            "U_r^dag" => &s.u_r_dag,
            "J+" => &s.j_plus,
            "J-" => &s.j_minus,
            "J3" => &s.j3,
            "J2" => &s.casimir,
            _ => return Err(PyValueError::new_err(format!("unknown operator {name:?}"))),
        };
        if alpha {
            let t = quon_su2::to_nonstandard(s.space.j, s.space.r, op).map_err(err)?;
            return Ok(rows(&t));
        }
        Ok(rows(op))
    }

    /// su(2), Casimir and eigenbasis residuals by name.
    fn residuals<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let mut rep = quon_su2::verify_su2(&self.inner);
        rep.merge(&quon_su2::casimir_identities(&self.inner));
        rep.merge(&quon_su2::verify_eigenbasis(self.inner.space.j, self.inner.space.r).map_err(err)?);
        report_dict(py, &rep)
    }

    fn __repr__(&self) -> String {
        format!("SpinOperators(j={}, r={})", self.inner.space.j, self.inner.space.r)
    }
}

/// Quon operators for order `k`: `a+`, `a-`, `b+`, `b-` on `k` levels and
/// `H`, `U_r` on the `k^2`-dimensional product space.
#[pyfunction]
#[pyo3(signature = (k, phi=0.0))]
fn quon_operators<'py>(py: Python<'py>, k: i64, phi: f64) -> PyResult<Bound<'py, PyDict>> {
    let rep = quon_su2::build_rep(k).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("a+", rows(&rep.a_plus))?;
    d.set_item("a-", rows(&rep.a_minus))?;
    d.set_item("b+", rows(&rep.b_plus))?;
    d.set_item("b-", rows(&rep.b_minus))?;
    d.set_item("H", rows(&quon_su2::build_h(&rep)))?;
    d.set_item("U_r", rows(&quon_su2::build_ur(&rep, phi)))?;
    Ok(d)
}

/// Quon defining-relation residuals for order `k`.
#[pyfunction]
fn quon_relations(py: Python<'_>, k: i64) -> PyResult<Bound<'_, PyDict>> {
    let rep = quon_su2::build_rep(k).map_err(err)?;
    report_dict(py, &rep.defining_relations())
}

/// Runs the verification suite and returns one dict per check.
#[pyfunction]
#[pyo3(signature = (j_max="5/2", r=vec![0.0, 0.37], k=vec![2, 3, 4], tol=None, seed=0x5eed, samples=20))]
fn verify<'py>(
    py: Python<'py>,
    j_max: &str,
    r: Vec<f64>,
    k: Vec<i64>,
    tol: Option<f64>,
    seed: u64,
    samples: usize,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let base = VerifyConfig::default();
    let cfg = VerifyConfig {
        j_max: j_max.parse().map_err(err)?,
        r_values: r,
        k_values: k,
        tol,
        seed,
        random_samples: samples,
        coupling_j_max: HalfInt::from_twice(2),
        standard_j_max: HalfInt::from_twice(2),
        tensor_j_max: HalfInt::from_twice(4),
        ..base
    };
    let report = py.detach(|| quon_su2::run_suite(&cfg)).map_err(err)?;
    report
        .checks
        .iter()
        .map(|c| {
            let d = PyDict::new(py);
            d.set_item("name", &c.name)?;
            d.set_item("parameters", c.parameters.clone())?;
            d.set_item("residual", c.residual)?;
            d.set_item("tolerance", c.tolerance)?;
            d.set_item("pass", c.pass)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
fn quon_su2_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<SpinOperators>()?;
    m.add_function(wrap_pyfunction!(cg, m)?)?;
    m.add_function(wrap_pyfunction!(cg_exact, m)?)?;
    m.add_function(wrap_pyfunction!(threejm, m)?)?;
    m.add_function(wrap_pyfunction!(sixj, m)?)?;
    m.add_function(wrap_pyfunction!(ninej, m)?)?;
    m.add_function(wrap_pyfunction!(alpha_values, m)?)?;
    m.add_function(wrap_pyfunction!(overlap, m)?)?;
    m.add_function(wrap_pyfunction!(cg_nonstandard, m)?)?;
    m.add_function(wrap_pyfunction!(fbar, m)?)?;
    m.add_function(wrap_pyfunction!(f_small, m)?)?;
    m.add_function(wrap_pyfunction!(quon_operators, m)?)?;
    m.add_function(wrap_pyfunction!(quon_relations, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
