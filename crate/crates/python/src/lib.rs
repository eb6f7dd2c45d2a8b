//! Python bindings: coverings, series, numeric evaluation, the identity
//! catalog and the named pull-backs.

use liouheun_core::coverings::{
    cyclic_covering, dihedral_covering, dihedral_json, nonbelyi_covering,
};
use liouheun_core::exact::parse_rational;
use liouheun_core::identities::{
    catalog as core_catalog, run_all_with, run_identity, Profile, RunConfig,
};
use liouheun_core::numeric;
use liouheun_core::pullback::{run_scenario, Scenario, ScenarioParams};
use liouheun_core::series::{
    eval_heun as core_eval_heun, eval_hpg as core_eval_hpg, heun_series as core_heun_series,
    hpg_series as core_hpg_series, HeunParams, HpgParams, Policy,
};
use liouheun_core::{Error, Rational};
use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyKeyError, PyValueError};
use pyo3::prelude::*;
use rug::Complex;
use serde_json::Value;

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::UnknownIdentity(id) => PyKeyError::new_err(id),
        e if e.is_numeric_domain() => PyArithmeticError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn exact(v: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(i) = v.extract::<i64>() {
        return Ok(Rational::from(i));
    }
    let s: String = v
        .extract()
        .map_err(|_| PyValueError::new_err("expected an int or a rational string 'p/q'"))?;
    parse_rational(&s)
        .ok_or_else(|| PyValueError::new_err(format!("{s:?} is not an exact rational")))
}

/// Exact rationals from ints or `'p/q'` strings, otherwise floats or complex.
fn numeric_arg(v: &Bound<'_, PyAny>, prec: u32) -> PyResult<Complex> {
    if let Ok(r) = exact(v) {
        return Ok(Complex::with_val(prec, &r));
    }
    let z: Complex64 = v
        .extract()
        .map_err(|_| PyValueError::new_err("expected a number or a rational string"))?;
    Ok(Complex::with_val(prec, (z.re, z.im)))
}

fn json_to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    let loads = py.import("json")?.getattr("loads")?;
    Ok(loads.call1((v.to_string(),))?.unbind())
}

fn to_c64(z: &Complex) -> Complex64 {
    Complex64::new(z.real().to_f64(), z.imag().to_f64())
}

/// A rational map with its fiber data over `0, 1, ∞`.
#[pyclass(frozen)]
struct Covering {
    doc: Value,
}

#[pymethods]
impl Covering {
    /// `φ = 1 − (1−x)^N (1 + N·x/M)^M`.
    #[staticmethod]
    fn cyclic(n: u32, m: u32) -> PyResult<Self> {
        let c = cyclic_covering(n, m).map_err(to_py_err)?;
        Ok(Covering { doc: c.to_json() })
    }

    /// `φ = x³Θ₂²/Θ₁²`.
    #[staticmethod]
    fn dihedral(n: u32, m: u32) -> PyResult<Self> {
        let (c, pair) = dihedral_covering(n, m).map_err(to_py_err)?;
        Ok(Covering {
            doc: dihedral_json(&c, &pair),
        })
    }

    /// `φ_s = 4s·x(2−x)/(x²−2x−s)²`.
    #[staticmethod]
    fn nonbelyi(s: &Bound<'_, PyAny>) -> PyResult<Self> {
        let c = nonbelyi_covering(&exact(s)?).map_err(to_py_err)?;
        Ok(Covering { doc: c.to_json() })
    }

    #[getter]
    fn degree(&self) -> usize {
        self.doc["degree"].as_u64().unwrap_or(0) as usize
    }

    #[getter]
    fn belyi(&self) -> bool {
        self.doc["belyi"].as_bool().unwrap_or(false)
    }

    #[getter]
    fn passport(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        json_to_py(py, &self.doc["passport"])
    }

    /// Numerator and denominator coefficients as integer strings.
    #[getter]
    fn phi(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        json_to_py(py, &self.doc["phi"])
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        json_to_py(py, &self.doc)
    }

    fn to_json(&self) -> String {
        self.doc.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Covering({}, degree={})", self.doc["family"], self.degree())
    }
}

/// Local Heun solution `Hl(t, q; a, b; c; d; x)`.
#[pyfunction]
#[pyo3(signature = (t, q, a, b, c, d, x, digits = 50))]
#[allow(clippy::too_many_arguments)]
fn eval_heun(
    t: &Bound<'_, PyAny>,
    q: &Bound<'_, PyAny>,
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
    c: &Bound<'_, PyAny>,
    d: &Bound<'_, PyAny>,
    x: &Bound<'_, PyAny>,
    digits: u32,
) -> PyResult<Complex64> {
    let prec = numeric::bits_for_digits(digits);
    let p = HeunParams::new(
        numeric_arg(t, prec)?,
        numeric_arg(q, prec)?,
        numeric_arg(a, prec)?,
        numeric_arg(b, prec)?,
        numeric_arg(c, prec)?,
        numeric_arg(d, prec)?,
    );
    let ev = core_eval_heun(&p, &numeric_arg(x, prec)?, &Policy::with_digits(digits))
        .map_err(to_py_err)?;
    Ok(to_c64(&ev.value))
}

/// Gauss hypergeometric `₂F₁(A, B; C; x)`.
#[pyfunction]
#[pyo3(signature = (a, b, c, x, digits = 50))]
fn eval_hpg(
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
    c: &Bound<'_, PyAny>,
    x: &Bound<'_, PyAny>,
    digits: u32,
) -> PyResult<Complex64> {
    let prec = numeric::bits_for_digits(digits);
    let p = HpgParams::new(
        numeric_arg(a, prec)?,
        numeric_arg(b, prec)?,
        numeric_arg(c, prec)?,
    );
    let ev = core_eval_hpg(&p, &numeric_arg(x, prec)?, &Policy::with_digits(digits))
        .map_err(to_py_err)?;
    Ok(to_c64(&ev.value))
}

/// Exact Heun series coefficients as rational strings.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
fn heun_series(
    t: &Bound<'_, PyAny>,
    q: &Bound<'_, PyAny>,
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
    c: &Bound<'_, PyAny>,
    d: &Bound<'_, PyAny>,
    order: usize,
) -> PyResult<Vec<String>> {
    let p = HeunParams::new(
        exact(t)?,
        exact(q)?,
        exact(a)?,
        exact(b)?,
        exact(c)?,
        exact(d)?,
    );
    let s = core_heun_series(&p, order).map_err(to_py_err)?;
    Ok(s.coeffs.iter().map(|r| r.to_string()).collect())
}

/// Exact Gauss series coefficients as rational strings.
#[pyfunction]
fn hpg_series(
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
    c: &Bound<'_, PyAny>,
    order: usize,
) -> PyResult<Vec<String>> {
    let s = core_hpg_series(&HpgParams::new(exact(a)?, exact(b)?, exact(c)?), order)
        .map_err(to_py_err)?;
    Ok(s.coeffs.iter().map(|r| r.to_string()).collect())
}

/// Identity ids in the catalog.
#[pyfunction]
fn catalog() -> Vec<&'static str> {
    core_catalog().iter().map(|c| c.id).collect()
}

/// Verify one identity (or `"all"`); returns a list of report dicts.
#[pyfunction]
#[pyo3(signature = (id = "all", profile = "quick", seed = 0, digits = 50))]
fn verify(py: Python<'_>, id: &str, profile: &str, seed: u64, digits: u32) -> PyResult<Py<PyAny>> {
    let profile = Profile::parse(profile)
        .ok_or_else(|| PyValueError::new_err("profile must be 'quick' or 'full'"))?;
    let mut cfg = RunConfig::for_profile(profile, seed);
    cfg.digits = digits;
    let reports = py.detach(|| {
        if id == "all" {
            Ok(run_all_with(&cfg))
        } else {
            run_identity(id, &cfg).map(|r| vec![r])
        }
    });
    let reports = reports.map_err(to_py_err)?;
    let docs = Value::Array(reports.iter().map(|r| r.to_json(false)).collect());
    json_to_py(py, &docs)
}

/// Run a named pull-back (`P1`, `TRIVPBF`, `NONBELYI`, `DIHEDRAL-DIFF`).
#[pyfunction]
#[pyo3(signature = (scenario, hpg = None, n = None, m = None, alpha = None, s = None, e = None))]
#[allow(clippy::too_many_arguments)]
fn pullback(
    py: Python<'_>,
    scenario: &str,
    hpg: Option<(Bound<'_, PyAny>, Bound<'_, PyAny>, Bound<'_, PyAny>)>,
    n: Option<u32>,
    m: Option<u32>,
    alpha: Option<Bound<'_, PyAny>>,
    s: Option<Bound<'_, PyAny>>,
    e: Option<Bound<'_, PyAny>>,
) -> PyResult<Py<PyAny>> {
    let sc = Scenario::parse(scenario)
        .ok_or_else(|| PyValueError::new_err(format!("unknown scenario {scenario:?}")))?;
    let opt = |v: &Option<Bound<'_, PyAny>>| v.as_ref().map(exact).transpose();
    let params = ScenarioParams {
        hpg: match &hpg {
            Some((a, b, c)) => Some(HpgParams::new(exact(a)?, exact(b)?, exact(c)?)),
            None => None,
        },
        n,
        m,
        alpha: opt(&alpha)?,
        s: opt(&s)?,
        e: opt(&e)?,
    };
    let report = run_scenario(sc, &params).map_err(to_py_err)?;
    json_to_py(py, &report.to_json())
}

#[pymodule]
fn liouheun(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Covering>()?;
    m.add_function(wrap_pyfunction!(eval_heun, m)?)?;
    m.add_function(wrap_pyfunction!(eval_hpg, m)?)?;
    m.add_function(wrap_pyfunction!(heun_series, m)?)?;
    m.add_function(wrap_pyfunction!(hpg_series, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(pullback, m)?)?;
    Ok(())
}
