//! Python bindings. Reports come back as plain dicts, exact numbers as
//! `fractions.Fraction`.

use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use contact_atlas_core::chow::{self, DivisorClassP, RuledSurfaceParams};
use contact_atlas_core::contact::{self, bundled_action, parse_action, LinearContactAction, QuotientVerdict};
use contact_atlas_core::nilpotent::{kk_pullback_check, SamplePlan};
use contact_atlas_core::report::{self, NilpotentTarget, PipelineReport, VerdictExpectation};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, q: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    let cls = py.import("fractions")?.getattr("Fraction")?;
    cls.call1((q.numer().clone(), q.denom().clone()))
}

fn from_json<'py>(py: Python<'py>, s: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.getattr("loads")?.call1((s,))
}

/// Outcome of one pipeline run.
#[pyclass(frozen, module = "contact_atlas")]
struct Report {
    inner: PipelineReport,
}

#[pymethods]
impl Report {
    #[getter]
    fn pipeline(&self) -> &str {
        &self.inner.pipeline
    }

    #[getter]
    fn passed(&self) -> bool {
        self.inner.passed()
    }

    /// Name of the first failing check, if any.
    #[getter]
    fn first_failure(&self) -> Option<String> {
        self.inner.first_failure().map(|c| c.name.clone())
    }

    /// `[(name, passed), ..]` in report order.
    #[getter]
    fn checks(&self) -> Vec<(String, bool)> {
        self.inner.checks.iter().map(|c| (c.name.clone(), c.pass)).collect()
    }

    #[getter]
    fn warnings(&self) -> Vec<String> {
        self.inner.warnings.clone()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        from_json(py, &self.inner.to_json())
    }

    fn __repr__(&self) -> String {
        let ok = self.inner.checks.iter().filter(|c| c.pass).count();
        format!("Report({:?}, {}/{} checks passed)", self.inner.pipeline, ok, self.inner.checks.len())
    }
}

fn wrap(r: Result<PipelineReport, report::ReportError>) -> PyResult<Report> {
    r.map(|inner| Report { inner }).map_err(value_err)
}

#[pyfunction]
fn fav_report(n: usize) -> PyResult<Report> {
    wrap(report::fav_report(n))
}

#[pyfunction]
fn p5_report() -> PyResult<Report> {
    wrap(report::p5_report())
}

#[pyfunction]
#[pyo3(signature = (g, e, a = 0))]
fn threefold_report(g: i64, e: i64, a: u64) -> PyResult<Report> {
    wrap(report::threefold_report(g, e, a))
}

#[pyfunction]
#[pyo3(signature = (expression, g = 0, e = 0))]
fn chow_report(expression: &str, g: i64, e: i64) -> PyResult<Report> {
    wrap(report::chow_report(expression, g, e, None))
}

#[pyfunction]
#[pyo3(signature = (*, k = None, n = None, samples = 1000, seed = 42, coordinate_range = 10))]
fn nilpotent_report(k: Option<usize>, n: Option<usize>, samples: usize, seed: u64, coordinate_range: u32) -> PyResult<Report> {
    let target = match (k, n) {
        (Some(k), None) => NilpotentTarget::Poset(k),
        (None, Some(n)) => NilpotentTarget::Maps(n),
        _ => return Err(PyValueError::new_err("pass exactly one of k or n")),
    };
    let plan = SamplePlan::with_range(samples, seed, coordinate_range).map_err(value_err)?;
    wrap(report::nilpotent_report(target, &plan))
}

/// A ruled surface `S` over a curve of genus `g`, invariant `e`, and the
/// Chow ring of `P(TS)`.
#[pyclass(frozen, module = "contact_atlas")]
struct RuledSurface {
    inner: RuledSurfaceParams,
}

#[pymethods]
impl RuledSurface {
    #[new]
    fn new(g: i64, e: i64) -> PyResult<Self> {
        RuledSurfaceParams::new(g, e).map(|inner| Self { inner }).map_err(value_err)
    }

    #[getter]
    fn g(&self) -> i64 {
        self.inner.g()
    }

    #[getter]
    fn e(&self) -> i64 {
        self.inner.e()
    }

    /// Degree of a degree-3 expression such as `"xi^3"` or `"-K*l*xi"`.
    fn degree<'py>(&self, py: Python<'py>, expression: &str) -> PyResult<Bound<'py, PyAny>> {
        let expr = chow::parse(expression).map_err(value_err)?;
        let class = chow::evaluate(&expr, &self.inner).map_err(value_err)?;
        fraction(py, &chow::degree3(&class).map_err(value_err)?)
    }

    /// Rows `pi^* l`, `pi^* B0`, `xi`; columns `sigma_*[l]`, `sigma_*[B0]`, `C_pi`.
    fn pairing_table<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        chow::pairing_table(&self.inner)
            .iter()
            .map(|row| row.iter().map(|q| fraction(py, q)).collect())
            .collect()
    }

    /// `D_a^3` for `D_a = pi^*(a l) + xi`.
    fn d_a_cubed<'py>(&self, py: Python<'py>, a: i64) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &chow::self_intersection(&DivisorClassP::d_a(a), &self.inner))
    }

    fn threshold_check<'py>(&self, py: Python<'py>, a: u64) -> PyResult<Bound<'py, PyAny>> {
        let s = chow::shokurov_threshold_check(&self.inner, a);
        let d = PyDict::new(py);
        d.set_item("threshold", s.threshold)?;
        d.set_item("threshold_ok", s.threshold_ok)?;
        d.set_item("positivity_holds", s.positivity_holds)?;
        let pairings = s.pairings.iter().map(|q| fraction(py, q)).collect::<PyResult<Vec<_>>>()?;
        d.set_item("pairings", pairings)?;
        d.set_item("top_self_intersection", fraction(py, &s.top_self_intersection)?)?;
        Ok(d.into_any())
    }

    fn __repr__(&self) -> String {
        format!("RuledSurface(g={}, e={})", self.inner.g(), self.inner.e())
    }
}

/// A finite group acting linearly on `C^{2n+2}`.
#[pyclass(frozen, module = "contact_atlas")]
struct ContactAction {
    inner: LinearContactAction,
    source: String,
}

#[pymethods]
impl ContactAction {
    /// Parse an action from its JSON text.
    #[staticmethod]
    fn from_json(src: &str) -> PyResult<Self> {
        let inner = parse_action(src).map_err(value_err)?;
        Ok(Self {
            inner,
            source: "json".into(),
        })
    }

    /// One of the actions shipped with the library.
    #[staticmethod]
    fn bundled(name: &str) -> PyResult<Self> {
        let src = bundled_action(name).ok_or_else(|| PyKeyError::new_err(name.to_string()))?;
        let inner = parse_action(src).map_err(value_err)?;
        Ok(Self {
            inner,
            source: format!("bundled:{name}"),
        })
    }

    #[staticmethod]
    fn bundled_names() -> Vec<&'static str> {
        contact::BUNDLED_ACTIONS.iter().map(|(n, _)| *n).collect()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    /// `"InducedContactStructure"` or `"Fails(generator, classification)"`.
    fn verdict(&self) -> PyResult<String> {
        Ok(match contact::quotient_verdict(&self.inner).map_err(value_err)? {
            QuotientVerdict::InducedContactStructure => "InducedContactStructure".into(),
            QuotientVerdict::Fails {
                generator,
                classification,
            } => format!("Fails({generator}, {classification})"),
        })
    }

    fn min_fixed_codimension(&self) -> PyResult<usize> {
        self.inner.min_fixed_codimension().map_err(value_err)
    }

    /// How each group element transforms the symplectic form.
    fn omega_transforms(&self) -> PyResult<Vec<String>> {
        self.inner
            .elements()
            .iter()
            .map(|g| contact::omega_transform(g, self.inner.ambient()).map(|t| t.to_string()))
            .collect::<Result<_, _>>()
            .map_err(value_err)
    }

    /// Full report; `expect` is `"induced"`, `"fails"` or `None`.
    #[pyo3(signature = (expect = None))]
    fn report(&self, expect: Option<&str>) -> PyResult<Report> {
        let expect = match expect {
            None => None,
            Some("induced") => Some(VerdictExpectation::Induced),
            Some("fails") => Some(VerdictExpectation::Fails),
            Some(other) => return Err(PyValueError::new_err(format!("unknown expectation {other:?}"))),
        };
        wrap(report::quotient_report(&self.inner, &self.source, expect))
    }
}

/// Index of the sublattice for the `Z_2^n` quotient of `P^{2n+1}`.
#[pyfunction]
fn fav_sublattice_index(n: usize) -> PyResult<BigInt> {
    let iota = contact_atlas_core::toric::pipelines::fav_inclusion(n).map_err(value_err)?;
    iota.sublattice_index().map_err(value_err)
}

/// `(constant, max_residual, passed)` of the Kostant-Kirillov pullback check.
#[pyfunction]
#[pyo3(signature = (n, samples = 100, seed = 42))]
fn kk_pullback(n: usize, samples: usize, seed: u64) -> PyResult<(f64, f64, bool)> {
    let plan = SamplePlan::new(samples, seed).map_err(value_err)?;
    let r = kk_pullback_check(n, &plan).map_err(value_err)?;
    Ok((r.constant, r.max_residual, r.passed))
}

#[pymodule]
fn contact_atlas(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SCHEMA_VERSION", report::SCHEMA_VERSION)?;
    m.add_class::<Report>()?;
    m.add_class::<RuledSurface>()?;
    m.add_class::<ContactAction>()?;
    m.add_function(wrap_pyfunction!(fav_report, m)?)?;
    m.add_function(wrap_pyfunction!(p5_report, m)?)?;
    m.add_function(wrap_pyfunction!(threefold_report, m)?)?;
    m.add_function(wrap_pyfunction!(chow_report, m)?)?;
    m.add_function(wrap_pyfunction!(nilpotent_report, m)?)?;
    m.add_function(wrap_pyfunction!(fav_sublattice_index, m)?)?;
    m.add_function(wrap_pyfunction!(kk_pullback, m)?)?;
    Ok(())
}
