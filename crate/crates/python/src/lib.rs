//! Python bindings. Algebra elements and coring/dual-ring elements cross the
//! boundary as lists of residues in canonical coordinates.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList, PyString};
use serde_json::Value;

use pgalois::commands::{self, emit_report, Command, ReportDocument, RunOptions};
use pgalois::coring::Coring;
use pgalois::dual::DualRing;
use pgalois::instance::{self, Instance, InstanceDocument, SubringDoc};
use pgalois::report::ValidationReport;
use pgalois::{fixtures, random, Error};

create_exception!(pgalois, PgaloisError, PyValueError, "Raised for malformed input; the message starts with [code].");

fn err(e: Error) -> PyErr {
    PgaloisError::new_err(format!("[{}] {e}", e.code()))
}

fn shape(msg: String) -> PyErr {
    err(Error::Shape(msg))
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any(),
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.into_pyobject(py)?.into_any(),
            (None, Some(i)) => i.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => PyString::new(py, s).into_any(),
        Value::Array(items) => {
            let items = items.iter().map(|x| to_py(py, x)).collect::<PyResult<Vec<_>>>()?;
            PyList::new(py, items)?.into_any()
        }
        Value::Object(map) => {
            let d = PyDict::new(py);
            for (k, x) in map {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

fn violations<'py>(py: Python<'py>, rep: &ValidationReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    for v in &rep.violations {
        d.set_item(v.condition, v.witness.clone())?;
    }
    Ok(d)
}

fn check_vector(v: &[u64], len: usize, p: u64, what: &str) -> PyResult<()> {
    if v.len() != len {
        return Err(shape(format!("{what} needs {len} coordinates, got {}", v.len())));
    }
    if v.iter().any(|&x| x >= p) {
        return Err(shape(format!("{what} has entries not reduced mod {p}")));
    }
    Ok(())
}

/// A partial action together with an optional subring and modules.
#[pyclass(name = "Instance", module = "pgalois", frozen)]
struct PyInstance {
    doc: InstanceDocument,
    inner: Instance,
}

impl PyInstance {
    fn from_doc(doc: InstanceDocument) -> PyResult<Self> {
        let inner = doc.build().map_err(err)?;
        Ok(Self { doc, inner })
    }

    fn from_partial_action(pa: &pgalois::partial_action::PartialAction) -> PyResult<Self> {
        Self::from_doc(InstanceDocument::from_partial_action(pa, None))
    }

    fn options(&self, subring: Option<Vec<Vec<u64>>>) -> PyResult<RunOptions> {
        let subring = match subring {
            Some(basis) => {
                Some(instance::subring_from_doc(self.inner.pa.algebra(), &SubringDoc { basis }).map_err(err)?)
            }
            None => None,
        };
        Ok(RunOptions { subring })
    }

    fn report(&self, command: &str, subring: Option<Vec<Vec<u64>>>) -> PyResult<ReportDocument> {
        let cmd: Command = command.parse().map_err(err)?;
        if !cmd.is_report() {
            return Err(err(Error::UnknownCommand(format!("{cmd} is not a report command"))));
        }
        commands::run(cmd, &self.inner, &self.options(subring)?).map_err(err)
    }
}

#[pymethods]
impl PyInstance {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Self::from_doc(instance::parse_instance(text).map_err(err)?)
    }

    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| err(e.into()))?;
        Self::from_json(&text)
    }

    /// One of `fixture_names()`.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        let pa = fixtures::by_name(name)
            .ok_or_else(|| err(Error::Semantic { pointer: "name".into(), message: format!("no fixture {name}") }))?;
        Self::from_partial_action(&pa)
    }

    fn to_json(&self) -> String {
        self.doc.to_text()
    }

    #[getter]
    fn prime(&self) -> u64 {
        self.inner.pa.algebra().p()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.pa.algebra().dim()
    }

    #[getter]
    fn group_order(&self) -> usize {
        self.inner.pa.group().order()
    }

    #[getter]
    fn is_global(&self) -> bool {
        self.inner.pa.is_global()
    }

    #[getter]
    fn idempotents(&self) -> Vec<Vec<u64>> {
        self.inner.pa.idempotents().iter().map(|e| e.to_vec()).collect()
    }

    fn multiply(&self, x: Vec<u64>, y: Vec<u64>) -> PyResult<Vec<u64>> {
        let alg = self.inner.pa.algebra();
        check_vector(&x, alg.dim(), alg.p(), "x")?;
        check_vector(&y, alg.dim(), alg.p(), "y")?;
        Ok(alg.mul(&x, &y).into_vec())
    }

    /// `alpha_s(a e_{s^-1})`.
    fn alpha(&self, s: usize, a: Vec<u64>) -> PyResult<Vec<u64>> {
        let pa = &self.inner.pa;
        if s >= pa.group().order() {
            return Err(shape(format!("group index {s} out of range")));
        }
        check_vector(&a, pa.algebra().dim(), pa.algebra().p(), "a")?;
        Ok(pa.alpha(s, &a).into_vec())
    }

    /// Violated partial-action conditions, each with its witness; empty when valid.
    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        violations(py, &self.inner.pa.validate())
    }

    /// Basis of the invariant subring, one coordinate vector per element.
    fn invariants(&self) -> PyResult<Vec<Vec<u64>>> {
        Ok(self.inner.pa.invariants().map_err(err)?.basis_matrix().to_rows())
    }

    fn coring(&self) -> PyCoring {
        PyCoring { inner: Coring::new(self.inner.pa.clone()) }
    }

    fn dual_ring(&self) -> PyResult<PyDualRing> {
        Ok(PyDualRing { inner: DualRing::new(&self.inner.pa).map_err(err)? })
    }

    /// Runs a report command and returns the report as a dict.
    #[pyo3(signature = (command, subring = None))]
    fn run<'py>(&self, py: Python<'py>, command: &str, subring: Option<Vec<Vec<u64>>>) -> PyResult<Bound<'py, PyAny>> {
        let rep = self.report(command, subring)?;
        to_py(py, &serde_json::to_value(&rep).expect("reports serialize"))
    }

    /// The canonical report text and its exit code.
    #[pyo3(signature = (command, subring = None))]
    fn emit(&self, command: &str, subring: Option<Vec<Vec<u64>>>) -> PyResult<(String, i32)> {
        let rep = self.report(command, subring)?;
        Ok((emit_report(&rep).map_err(err)?, rep.exit_code()))
    }

    fn is_galois(&self) -> PyResult<bool> {
        pgalois::coring::is_partial_galois(&self.inner.pa).map_err(err)
    }

    fn __repr__(&self) -> String {
        let pa = &self.inner.pa;
        format!("Instance(p={}, dim={}, |G|={})", pa.algebra().p(), pa.algebra().dim(), pa.group().order())
    }
}

/// `C`, with elements as coordinate lists on the canonical basis `(s, a)`.
#[pyclass(name = "Coring", module = "pgalois", frozen)]
struct PyCoring {
    inner: Coring,
}

impl PyCoring {
    fn element(&self, c: &[u64]) -> PyResult<pgalois::coring::CoringElement> {
        check_vector(c, self.inner.dim(), self.inner.partial_action().algebra().p(), "coring element")?;
        Ok(self.inner.from_coordinates(c))
    }

    fn algebra_vec(&self, a: &[u64]) -> PyResult<()> {
        let alg = self.inner.partial_action().algebra();
        check_vector(a, alg.dim(), alg.p(), "a")
    }
}

#[pymethods]
impl PyCoring {
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn v(&self, s: usize) -> PyResult<Vec<u64>> {
        if s >= self.inner.partial_action().group().order() {
            return Err(shape(format!("group index {s} out of range")));
        }
        Ok(self.inner.coordinates(&self.inner.v(s)))
    }

    fn grouplike(&self) -> PyResult<Vec<u64>> {
        Ok(self.inner.coordinates(&self.inner.grouplike().map_err(err)?))
    }

    fn left_act(&self, a: Vec<u64>, c: Vec<u64>) -> PyResult<Vec<u64>> {
        self.algebra_vec(&a)?;
        Ok(self.inner.coordinates(&self.inner.left_act(&a, &self.element(&c)?)))
    }

    fn right_act(&self, c: Vec<u64>, a: Vec<u64>) -> PyResult<Vec<u64>> {
        self.algebra_vec(&a)?;
        Ok(self.inner.coordinates(&self.inner.right_act(&self.element(&c)?, &a)))
    }

    fn counit(&self, c: Vec<u64>) -> PyResult<Vec<u64>> {
        Ok(self.inner.counit(&self.element(&c)?).into_vec())
    }

    /// `Delta(c)` as coefficients indexed by pairs `(s, t)` in row-major order.
    fn comultiply(&self, c: Vec<u64>) -> PyResult<Vec<Vec<u64>>> {
        let t = self.inner.comultiply(&self.element(&c)?);
        Ok(t.comps.into_iter().map(|a| a.into_vec()).collect())
    }

    /// `c (x) d` in the same layout as `comultiply`.
    fn tensor(&self, c: Vec<u64>, d: Vec<u64>) -> PyResult<Vec<Vec<u64>>> {
        let t = self.inner.tensor(&self.element(&c)?, &self.element(&d)?);
        Ok(t.comps.into_iter().map(|a| a.into_vec()).collect())
    }

    fn check_axioms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        violations(py, &self.inner.check_axioms())
    }
}

/// `*C`, with elements as coordinate lists on the basis `u_s a`.
#[pyclass(name = "DualRing", module = "pgalois", frozen)]
struct PyDualRing {
    inner: DualRing,
}

impl PyDualRing {
    fn element(&self, x: &[u64]) -> PyResult<pgalois::dual::DualElement> {
        check_vector(x, self.inner.dim(), self.inner.algebra().p(), "dual element")?;
        Ok(self.inner.unflatten(x))
    }
}

#[pymethods]
impl PyDualRing {
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn one(&self) -> Vec<u64> {
        self.inner.flatten(&self.inner.one())
    }

    fn u(&self, s: usize) -> PyResult<Vec<u64>> {
        if s >= self.inner.partial_action().group().order() {
            return Err(shape(format!("group index {s} out of range")));
        }
        Ok(self.inner.flatten(&self.inner.u(s)))
    }

    fn j(&self, a: Vec<u64>) -> PyResult<Vec<u64>> {
        let alg = self.inner.partial_action().algebra();
        check_vector(&a, alg.dim(), alg.p(), "a")?;
        Ok(self.inner.flatten(&self.inner.j(&a)))
    }

    fn mul(&self, x: Vec<u64>, y: Vec<u64>) -> PyResult<Vec<u64>> {
        Ok(self.inner.flatten(&self.inner.mul(&self.element(&x)?, &self.element(&y)?)))
    }

    fn check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        violations(py, &self.inner.check())
    }
}

#[pyfunction]
fn fixture_names() -> Vec<&'static str> {
    fixtures::NAMES.to_vec()
}

/// `count` restricted global actions from `seed`.
#[pyfunction]
fn corpus(seed: u64, count: usize) -> PyResult<Vec<PyInstance>> {
    random::corpus(seed, count).iter().map(|i| PyInstance::from_partial_action(&i.pa)).collect()
}

/// `count` instances that violate only the compatibility condition.
#[pyfunction]
fn mutants(seed: u64, count: usize) -> PyResult<Vec<PyInstance>> {
    random::mutants(seed, count)
        .iter()
        .map(|m| {
            let doc = InstanceDocument::from_partial_action(&m.pa, None);
            let inner = Instance { pa: m.pa.clone(), global: None, subring: None, modules: Vec::new() };
            Ok(PyInstance { doc, inner })
        })
        .collect()
}

/// Restricts the global action of an instance document.
#[pyfunction]
fn generate(text: &str) -> PyResult<String> {
    let doc = instance::parse_instance(text).map_err(err)?;
    Ok(commands::generate(&doc).map_err(err)?.to_text())
}

#[pyfunction]
fn write_fixtures(dir: &str) -> PyResult<Vec<String>> {
    let paths = commands::write_fixtures(std::path::Path::new(dir)).map_err(err)?;
    Ok(paths.iter().map(|p| p.display().to_string()).collect())
}

#[pymodule]
#[pyo3(name = "pgalois")]
fn pgalois_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInstance>()?;
    m.add_class::<PyCoring>()?;
    m.add_class::<PyDualRing>()?;
    m.add("PgaloisError", m.py().get_type::<PgaloisError>())?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    m.add_function(wrap_pyfunction!(corpus, m)?)?;
    m.add_function(wrap_pyfunction!(mutants, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(write_fixtures, m)?)?;
    Ok(())
}
