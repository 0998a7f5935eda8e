//! Python bindings. Errors surface as `ValueError`, overflow as `OverflowError`.

use hml::dist::{CountModel, Family};
use hml::hadamard::{self, QuadratureSpec};
use hml::series::SeriesOptions;
use hml::special::{self, GcomNormalizerParams, MLParams};
use hml::verify::{self, CheckConfig};
use hml::Error;
use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Overflow { .. } => PyOverflowError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn opts(tol: Option<f64>) -> SeriesOptions {
    tol.map_or_else(SeriesOptions::default, SeriesOptions::with_tolerance)
}

/// `Σ z^k / Γ(νk+γ)^α`.
#[pyfunction]
#[pyo3(signature = (alpha, nu, gamma, z, tol=None))]
fn alpha_ml(alpha: f64, nu: f64, gamma: f64, z: f64, tol: Option<f64>) -> PyResult<f64> {
    special::alpha_ml_with(MLParams::new(alpha, nu, gamma), z, &opts(tol)).map(|s| s.value).map_err(py_err)
}

/// Two-parameter Mittag-Leffler function `Σ z^k / Γ(νk+γ)`.
#[pyfunction]
fn mittag_leffler(nu: f64, gamma: f64, z: f64) -> PyResult<f64> {
    special::mittag_leffler(nu, gamma, z).map(|s| s.value).map_err(py_err)
}

/// `Σ z^k / ((k+1)!)^α`.
#[pyfunction]
fn le_roy(alpha: f64, z: f64) -> PyResult<f64> {
    special::le_roy(alpha, z).map(|s| s.value).map_err(py_err)
}

/// `Σ Γ(ν+k)^r t^k / k!`.
#[pyfunction]
#[pyo3(signature = (r, nu, t, tol=None))]
fn gcom_normalizer(r: f64, nu: f64, t: f64, tol: Option<f64>) -> PyResult<f64> {
    special::gcom_normalizer_with(GcomNormalizerParams::new(r, nu, t), &opts(tol)).map(|s| s.value).map_err(py_err)
}

/// `Σ t^k / (k! Γ(ak+b))`.
#[pyfunction]
#[pyo3(signature = (a, b, t, tol=None))]
fn wright(a: f64, b: f64, t: f64, tol: Option<f64>) -> PyResult<f64> {
    special::wright_with(a, b, t, &opts(tol)).map(|s| s.value).map_err(py_err)
}

/// Multiplier of `t^β` under the Caputo-type Hadamard derivative.
#[pyfunction]
fn caputo_hadamard_power(order: f64, beta: f64) -> PyResult<f64> {
    hadamard::caputo_hadamard_power(order, beta).map_err(py_err)
}

/// Multiplier of `t^β` under the Hadamard integral.
#[pyfunction]
fn hadamard_integral_power(order: f64, beta: f64) -> PyResult<f64> {
    hadamard::hadamard_integral_power(order, beta).map_err(py_err)
}

/// Hadamard integral of a Python callable by quadrature. Returns
/// `(value, tail_warning)`.
///
/// With `lower_limit = 0`, `min_exponent` (the decay rate of `f` at the
/// origin) sets where the infinite tail is cut.
#[pyfunction]
#[pyo3(signature = (f, order, t, min_exponent=None, lower_limit=0.0))]
fn hadamard_integral_quad(
    f: &Bound<'_, PyAny>,
    order: f64,
    t: f64,
    min_exponent: Option<f64>,
    lower_limit: f64,
) -> PyResult<(f64, bool)> {
    let mut spec = match min_exponent {
        Some(b) => QuadratureSpec::for_min_exponent(b).map_err(py_err)?,
        None => QuadratureSpec::default(),
    };
    spec.lower_limit = lower_limit;
    let mut failure: Option<PyErr> = None;
    let result = hadamard::hadamard_integral_quad(
        |x| match f.call1((x,)).and_then(|v| v.extract::<f64>()) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        order,
        &spec,
        t,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let r = result.map_err(py_err)?;
    Ok((r.value, r.tail_warning))
}

/// A validated count distribution.
///
/// `family` is one of `poisson`, `com`, `fpoisson`, `fcom`, `gcom`; the
/// shape parameters it needs are passed by keyword.
#[pyclass(name = "Distribution", frozen)]
struct PyDistribution {
    inner: hml::dist::Distribution,
}

fn family(name: &str, nu: Option<f64>, alpha: Option<f64>, gamma: Option<f64>, r: Option<f64>) -> PyResult<Family> {
    let mut missing = Vec::new();
    let mut need = |n: &str, v: Option<f64>| {
        v.unwrap_or_else(|| {
            missing.push(format!("{n} is required"));
            f64::NAN
        })
    };
    let f = match name {
        "poisson" => Family::Poisson,
        "com" | "com_poisson" => Family::ComPoisson { nu: need("nu", nu) },
        "fpoisson" | "fractional_poisson" => Family::FractionalPoisson { alpha: need("alpha", alpha) },
        "fcom" | "fractional_com_poisson" => Family::FractionalComPoisson {
            nu: need("nu", nu),
            alpha: need("alpha", alpha),
            gamma: need("gamma", gamma),
        },
        "gcom" => Family::GcomPoisson { r: need("r", r), nu: need("nu", nu) },
        other => return Err(PyValueError::new_err(format!("unknown family '{other}'"))),
    };
    if missing.is_empty() {
        Ok(f)
    } else {
        Err(py_err(Error::InvalidModel(missing)))
    }
}

#[pymethods]
impl PyDistribution {
    #[new]
    #[pyo3(signature = (family_name, t, rate=1.0, *, nu=None, alpha=None, gamma=None, r=None))]
    fn new(
        family_name: &str,
        t: f64,
        rate: f64,
        nu: Option<f64>,
        alpha: Option<f64>,
        gamma: Option<f64>,
        r: Option<f64>,
    ) -> PyResult<Self> {
        let fam = family(family_name, nu, alpha, gamma, r)?;
        let inner = CountModel::new(fam, rate, t).validate().map_err(py_err)?;
        Ok(PyDistribution { inner })
    }

    fn pmf(&self, k: u64) -> f64 {
        self.inner.pmf(k)
    }

    fn log_pmf(&self, k: u64) -> f64 {
        self.inner.log_pmf(k)
    }

    fn pgf(&self, u: f64) -> PyResult<f64> {
        self.inner.pgf(u).map_err(py_err)
    }

    /// `(mean, variance, dispersion_index)`.
    fn moments(&self) -> PyResult<(f64, f64, f64)> {
        let m = self.inner.moments().map_err(py_err)?;
        Ok((m.mean, m.variance, m.dispersion_index))
    }

    /// Draws are reproducible for a given seed and match `hadamard-ml dist sample`.
    #[pyo3(signature = (n, seed=0))]
    fn sample(&self, n: usize, seed: u64) -> PyResult<Vec<u64>> {
        self.inner.sample(n, &mut ChaCha8Rng::seed_from_u64(seed)).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        let m = self.inner.model();
        format!("Distribution({:?}, rate={}, t={})", m.family, m.rate, m.time)
    }
}

#[pyclass(name = "CheckReport", frozen, get_all)]
struct PyCheckReport {
    check_id: String,
    max_abs_residual: f64,
    max_rel_residual: f64,
    tolerance: f64,
    passed: bool,
    terms_used: usize,
    notes: Vec<String>,
}

#[pymethods]
impl PyCheckReport {
    fn __repr__(&self) -> String {
        format!(
            "CheckReport({}, max_rel_residual={:e}, tolerance={:e}, passed={})",
            self.check_id, self.max_rel_residual, self.tolerance, self.passed
        )
    }
}

impl From<verify::CheckReport> for PyCheckReport {
    fn from(r: verify::CheckReport) -> Self {
        PyCheckReport {
            check_id: r.check_id,
            max_abs_residual: r.max_abs_residual,
            max_rel_residual: r.max_rel_residual,
            tolerance: r.tolerance,
            passed: r.passed,
            terms_used: r.terms_used,
            notes: r.notes,
        }
    }
}

/// Runs one identity check. Unset parameters take the check's defaults;
/// `lam` is the rate.
#[pyfunction]
#[pyo3(signature = (check_id, *, tol=None, nu=None, lam=None, t=None, r=None, alpha=None, n=None, beta=None, grid=None))]
#[allow(clippy::too_many_arguments)]
fn run_check(
    check_id: &str,
    tol: Option<f64>,
    nu: Option<f64>,
    lam: Option<f64>,
    t: Option<f64>,
    r: Option<f64>,
    alpha: Option<f64>,
    n: Option<u32>,
    beta: Option<f64>,
    grid: Option<Vec<f64>>,
) -> PyResult<Vec<PyCheckReport>> {
    let cfg = CheckConfig { nu, lambda: lam, t, r, alpha, n, beta, grid, tolerance: tol, ..Default::default() };
    Ok(verify::run_check(check_id, &cfg).map_err(py_err)?.into_iter().map(Into::into).collect())
}

/// Runs every check with default parameters.
#[pyfunction]
#[pyo3(signature = (tol=None))]
fn run_all(tol: Option<f64>) -> PyResult<Vec<PyCheckReport>> {
    let cfg = CheckConfig { tolerance: tol, ..Default::default() };
    Ok(verify::run_all(&cfg).map_err(py_err)?.into_iter().map(Into::into).collect())
}

#[pymodule]
fn hadamard_ml(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(alpha_ml, m)?)?;
    m.add_function(wrap_pyfunction!(mittag_leffler, m)?)?;
    m.add_function(wrap_pyfunction!(le_roy, m)?)?;
    m.add_function(wrap_pyfunction!(gcom_normalizer, m)?)?;
    m.add_function(wrap_pyfunction!(wright, m)?)?;
    m.add_function(wrap_pyfunction!(caputo_hadamard_power, m)?)?;
    m.add_function(wrap_pyfunction!(hadamard_integral_power, m)?)?;
    m.add_function(wrap_pyfunction!(hadamard_integral_quad, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_all, m)?)?;
    m.add_class::<PyDistribution>()?;
    m.add_class::<PyCheckReport>()?;
    m.add("CHECK_IDS", verify::CHECK_IDS.to_vec())?;
    Ok(())
}
