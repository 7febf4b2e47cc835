//! Python bindings: exact polynomials and series, the two flows and their
//! integrals, symmetrization, ideal membership and the CLI runner.

use num_complex::Complex64;
use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use sigma3::cli::{self, RunConfig};
use sigma3::curvering::{ideal_t_member, standard_u_universe, symmetrize as sym, CurveParams};
use sigma3::dynsys::{compile_integral, eval_field, make_integrals, make_system, System};
use sigma3::exactalg::{parse_poly, parse_rational, Poly, Scalar, Series2, Universe};
use sigma3::flows::{self, Tolerances};
use sigma3::sigmalimit::{g_series, SeedKind, SeedSpec, SigmaSW};
use sigma3::Error;

create_exception!(pysigma3, Sigma3Error, PyException);
create_exception!(pysigma3, BlowUpError, Sigma3Error);

fn err(e: Error) -> PyErr {
    match e {
        Error::BlowUp { .. } => BlowUpError::new_err(e.to_string()),
        other => Sigma3Error::new_err(other.to_string()),
    }
}

fn system(name: &str) -> PyResult<System> {
    match name {
        "I" | "i" | "1" => Ok(System::I),
        "II" | "ii" | "2" => Ok(System::II),
        other => Err(PyValueError::new_err(format!("unknown system `{other}`; expected I or II"))),
    }
}

fn array<const N: usize>(v: Vec<Complex64>, what: &str) -> PyResult<[Complex64; N]> {
    let n = v.len();
    v.try_into().map_err(|_| PyValueError::new_err(format!("{what} needs {N} values, got {n}")))
}

/// A polynomial with exact coefficients over a weighted variable list.
#[pyclass(name = "Poly", module = "pysigma3")]
#[derive(Clone)]
struct PyPoly {
    inner: Poly,
}

#[pymethods]
impl PyPoly {
    /// `variables` is a list of (name, weight) pairs.
    #[new]
    fn new(text: &str, variables: Vec<(String, i32)>) -> PyResult<Self> {
        let vars: Vec<(&str, i32)> = variables.iter().map(|(n, w)| (n.as_str(), *w)).collect();
        let u = Universe::new(&vars);
        Ok(PyPoly { inner: parse_poly(text, &u).map_err(err)? })
    }

    /// Over u2, u4, u5, u7, y4, ..., y14.
    #[staticmethod]
    fn in_u(text: &str) -> PyResult<Self> {
        Ok(PyPoly { inner: parse_poly(text, &standard_u_universe()).map_err(err)? })
    }

    fn variables(&self) -> Vec<(String, i32)> {
        self.inner.universe().vars().iter().map(|v| (v.name.clone(), v.weight)).collect()
    }

    /// (lowest, highest) weighted degree; None for zero.
    fn weighted_degree(&self) -> Option<(i64, i64)> {
        self.inner.weighted_degree().ok().map(|d| (d.min, d.max))
    }

    fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn derivative(&self, name: &str) -> PyResult<Self> {
        Ok(PyPoly { inner: self.inner.derivative_by(name).map_err(err)? })
    }

    fn eval(&self, values: Vec<(String, Complex64)>) -> PyResult<Complex64> {
        let b: Vec<(&str, Complex64)> = values.iter().map(|(n, z)| (n.as_str(), *z)).collect();
        self.inner.eval_complex(&b).map_err(err)
    }

    fn __add__(&self, o: &Self) -> PyResult<Self> {
        Ok(PyPoly { inner: self.inner.try_add(&o.inner).map_err(err)? })
    }

    fn __sub__(&self, o: &Self) -> PyResult<Self> {
        Ok(PyPoly { inner: self.inner.try_sub(&o.inner).map_err(err)? })
    }

    fn __mul__(&self, o: &Self) -> PyResult<Self> {
        Ok(PyPoly { inner: self.inner.try_mul(&o.inner).map_err(err)? })
    }

    fn __neg__(&self) -> Self {
        PyPoly { inner: -&self.inner }
    }

    fn __pow__(&self, e: u32, _m: Option<PyObject>) -> Self {
        PyPoly { inner: self.inner.pow(e) }
    }

    fn __eq__(&self, o: &Self) -> bool {
        self.inner == o.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({:?})", self.inner.to_string())
    }
}

/// A truncated power series in (t, tau) with exact coefficients.
#[pyclass(name = "Series", module = "pysigma3")]
#[derive(Clone)]
struct PySeries {
    inner: Series2,
}

fn scalar_text(c: &Scalar) -> String {
    c.to_string()
}

#[pymethods]
impl PySeries {
    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    /// Coefficient of t^i tau^j as text ("n/d" or a field element).
    fn coefficient(&self, i: usize, j: usize) -> String {
        scalar_text(&self.inner.get(i, j))
    }

    /// Coefficient of t^i tau^j at the real embedding.
    fn coefficient_value(&self, i: usize, j: usize) -> Complex64 {
        self.inner.get(i, j).to_complex()
    }

    /// Nonzero (i, j, text) triples.
    fn terms(&self) -> Vec<(usize, usize, String)> {
        self.inner.nonzero_terms().into_iter().map(|(i, j, c)| (i, j, scalar_text(c))).collect()
    }

    fn deriv_t(&self) -> Self {
        PySeries { inner: self.inner.deriv_t() }
    }

    fn deriv_tau(&self) -> Self {
        PySeries { inner: self.inner.deriv_tau() }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// Series solution from a seed ("p0" or "p5"): (phi, [G2, G4, G5, G7]).
#[pyfunction]
#[pyo3(signature = (seed, order=12))]
fn series_solution(seed: &str, order: usize) -> PyResult<(PySeries, Vec<PySeries>)> {
    let kind = SeedKind::parse(seed).map_err(err)?;
    let s = SigmaSW::new().map_err(err)?;
    let g = g_series(&s, &SeedSpec::new(kind), order).map_err(err)?;
    Ok((PySeries { inner: g.phi.clone() }, g.g().iter().map(|x| PySeries { inner: x.clone() }).collect()))
}

/// A sampled trajectory of one of the flows.
#[pyclass(name = "Trajectory", module = "pysigma3")]
struct PyTrajectory {
    inner: flows::Trajectory,
}

#[pymethods]
impl PyTrajectory {
    #[getter]
    fn system(&self) -> &'static str {
        match self.inner.system {
            System::I => "I",
            System::II => "II",
        }
    }

    #[getter]
    fn t_end(&self) -> Complex64 {
        self.inner.t_end
    }

    #[getter]
    fn s(&self) -> Vec<f64> {
        self.inner.samples.iter().map(|x| x.s).collect()
    }

    #[getter]
    fn times(&self) -> Vec<Complex64> {
        self.inner.samples.iter().map(|x| x.time).collect()
    }

    #[getter]
    fn states(&self) -> Vec<[Complex64; 4]> {
        self.inner.samples.iter().map(|x| x.state).collect()
    }

    #[getter]
    fn final_state(&self) -> [Complex64; 4] {
        self.inner.last().state
    }

    /// (I12, I14) at every sample.
    #[getter]
    fn integrals(&self) -> Vec<(Complex64, Complex64)> {
        self.inner.samples.iter().map(|x| (x.i12, x.i14)).collect()
    }

    /// Largest |I(s) - I(0)| / max(1, |I(0)|) for I12 and I14.
    fn drift(&self) -> (f64, f64) {
        flows::drift_report(&self.inner)
    }

    /// (accepted, rejected, evaluations)
    fn stats(&self) -> (usize, usize, usize) {
        let s = self.inner.stats;
        (s.accepted, s.rejected, s.evaluations)
    }

    fn to_csv(&self) -> String {
        self.inner.to_csv()
    }

    fn __len__(&self) -> usize {
        self.inner.samples.len()
    }
}

/// Integrates a system from `init` over time(s) = s * t_end, s in [0, 1].
/// Raises BlowUpError when the solution escapes.
#[pyfunction]
#[pyo3(signature = (system_name, init, y, t_end, rel_tol=1e-10, abs_tol=1e-12, max_step=0.05))]
fn integrate(
    py: Python<'_>,
    system_name: &str,
    init: Vec<Complex64>,
    y: Vec<Complex64>,
    t_end: Complex64,
    rel_tol: f64,
    abs_tol: f64,
    max_step: f64,
) -> PyResult<PyTrajectory> {
    let sys = system(system_name)?;
    let init = array::<4>(init, "init")?;
    let y = array::<4>(y, "y (y4, y6, y8, y10)")?;
    let tol = Tolerances { rel: rel_tol, abs: abs_tol, max_step };
    let inner = py.allow_threads(|| flows::integrate(sys, init, y, t_end, tol)).map_err(err)?;
    Ok(PyTrajectory { inner })
}

/// Right-hand side of a system at a state.
#[pyfunction]
fn vector_field(system_name: &str, state: Vec<Complex64>, y: Vec<Complex64>) -> PyResult<[Complex64; 4]> {
    let vf = make_system(system(system_name)?);
    eval_field(&vf, &array::<4>(state, "state")?, &array::<4>(y, "y")?).map_err(err)
}

/// (I12, I14) at a state.
#[pyfunction]
fn integrals(state: Vec<Complex64>, y: Vec<Complex64>) -> PyResult<(Complex64, Complex64)> {
    let (x, y) = (array::<4>(state, "state")?, array::<4>(y, "y")?);
    let (i12, i14) = make_integrals().map_err(err)?;
    let c12 = compile_integral(&i12, &y).map_err(err)?;
    let c14 = compile_integral(&i14, &y).map_err(err)?;
    Ok((c12.eval(&x), c14.eval(&x)))
}

/// Rewrites a symmetric polynomial in X1, Y1, X2, Y2 (and y4..y14) in u2, u4, u5, u7.
#[pyfunction]
fn symmetrize(expr: &str) -> PyResult<String> {
    let f = parse_poly(expr, &cli::commands::symmetrize_universe()).map_err(err)?;
    Ok(sym(&f).map_err(err)?.to_string())
}

/// Randomized membership test in the ideal of the symmetric square, at
/// rational y4..y14 given as text. Returns (member, max_residual).
#[pyfunction]
#[pyo3(signature = (poly, y, trials=100, seed=7))]
fn ideal_member(poly: &PyPoly, y: Vec<String>, trials: usize, seed: u64) -> PyResult<(bool, f64)> {
    let vals: Vec<BigRational> = y.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>().map_err(err)?;
    let n = vals.len();
    let vals: [BigRational; 6] =
        vals.try_into().map_err(|_| PyValueError::new_err(format!("y needs 6 values, got {n}")))?;
    let r = ideal_t_member(&poly.inner, &CurveParams::from_rationals(vals), trials, seed).map_err(err)?;
    Ok((r.member, r.max_residual))
}

/// Runs a CLI configuration given as JSON. Returns (exit_code, body, metadata).
#[pyfunction]
fn run(py: Python<'_>, config_json: &str) -> PyResult<(i32, String, Option<String>)> {
    let cfg = RunConfig::from_json(config_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    match py.allow_threads(|| cli::execute(&cfg)) {
        Ok(o) => Ok((o.code, o.body, o.meta)),
        Err(e) => Ok((cli::exit_code(&e), String::new(), Some(e.to_string()))),
    }
}

#[pymodule]
fn pysigma3(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SCHEMA", cli::SCHEMA)?;
    m.add("Sigma3Error", m.py().get_type_bound::<Sigma3Error>())?;
    m.add("BlowUpError", m.py().get_type_bound::<BlowUpError>())?;
    m.add_class::<PyPoly>()?;
    m.add_class::<PySeries>()?;
    m.add_class::<PyTrajectory>()?;
    m.add_function(wrap_pyfunction!(series_solution, m)?)?;
    m.add_function(wrap_pyfunction!(integrate, m)?)?;
    m.add_function(wrap_pyfunction!(vector_field, m)?)?;
    m.add_function(wrap_pyfunction!(integrals, m)?)?;
    m.add_function(wrap_pyfunction!(symmetrize, m)?)?;
    m.add_function(wrap_pyfunction!(ideal_member, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
