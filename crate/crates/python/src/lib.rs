//! Python bindings: `QP`, `Algebra` and `Forms` objects plus catalog access and verification.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qpforge::catalog::{Catalog, LambdaChoice, CASES, FIGURES};
use qpforge::covering::CoveringWindow;
use qpforge::format::{parse_qp, write_qp};
use qpforge::forms::FormData;
use qpforge::jacobian::{PresentedAlgebra, DEFAULT_L_MAX};
use qpforge::mutation::{fingerprint, mutate, probe_nondegeneracy};
use qpforge::verify::{covering_report, verify_case, VerifyOptions};

create_exception!(qpforge_py, QpforgeError, PyValueError);

fn err(e: qpforge::Error) -> PyErr {
    QpforgeError::new_err(e.to_string())
}

fn lambda(text: &str) -> PyResult<LambdaChoice> {
    LambdaChoice::parse(text).map_err(err)
}

fn from_json(py: Python<'_>, text: String) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

#[pyclass(name = "QP", module = "qpforge_py", frozen)]
struct PyQp {
    name: String,
    inner: qpforge::qp::Qp,
}

#[pymethods]
impl PyQp {
    /// One of the four catalog cases.
    #[staticmethod]
    #[pyo3(signature = (name, lambda_ = "2"))]
    fn case(name: &str, lambda_: &str) -> PyResult<PyQp> {
        let rec = Catalog::from_env().case(name).map_err(err)?;
        Ok(PyQp { name: name.into(), inner: rec.qp_at(&lambda(lambda_)?).map_err(err)? })
    }

    /// Parse the `.qp` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<PyQp> {
        let f = parse_qp(text).map_err(err)?;
        Ok(PyQp { name: f.name.clone(), inner: f.qp() })
    }

    fn to_text(&self) -> PyResult<String> {
        write_qp(&self.name, &self.inner).map_err(err)
    }

    #[getter]
    fn name(&self) -> &str {
        &self.name
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.quiver.vertex_count()
    }

    #[getter]
    fn arrow_count(&self) -> usize {
        self.inner.quiver.arrow_count()
    }

    #[getter]
    fn term_count(&self) -> usize {
        self.inner.potential.term_count()
    }

    #[getter]
    fn potential(&self) -> String {
        self.inner.potential.display(&self.inner.quiver)
    }

    /// Arrows as `(name, source, target)` with vertices numbered from 1.
    fn arrows(&self) -> Vec<(String, usize, usize)> {
        self.inner.quiver.arrows().iter().map(|a| (a.name.clone(), a.source + 1, a.target + 1)).collect()
    }

    /// Mutate at vertices numbered from 1, in order.
    fn mutate(&self, vertices: Vec<usize>) -> PyResult<PyQp> {
        let n = self.vertex_count();
        let mut cur = self.inner.clone();
        for k in vertices {
            if k == 0 || k > n {
                return Err(PyValueError::new_err(format!("vertex {k} outside 1..={n}")));
            }
            cur = mutate(&cur, k - 1).map_err(err)?;
        }
        Ok(PyQp { name: self.name.clone(), inner: cur })
    }

    fn fingerprint(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let f = fingerprint(&self.inner).map_err(err)?;
        from_json(py, serde_json::to_string(&f).expect("fingerprint serializes"))
    }

    /// True when both QPs agree on every fingerprint invariant.
    fn same_fingerprint(&self, other: &PyQp) -> PyResult<bool> {
        let a = fingerprint(&self.inner).map_err(err)?;
        let b = fingerprint(&other.inner).map_err(err)?;
        a.matches(&b).map_err(err)
    }

    fn jacobian(&self, py: Python<'_>) -> PyResult<PyAlgebra> {
        let qp = self.inner.clone();
        let a = py.detach(move || qp.jacobian(DEFAULT_L_MAX)).map_err(err)?;
        Ok(PyAlgebra { inner: a })
    }

    /// Covering window report as a dict.
    fn cover(&self, py: Python<'_>, window: usize) -> PyResult<Py<PyAny>> {
        let qp = self.inner.clone();
        let report = py.detach(move || covering_report(&qp, window));
        from_json(py, report.to_json())
    }

    /// Number of vertices of the covering window `[-w, w]`.
    fn window_size(&self, window: usize) -> PyResult<usize> {
        CoveringWindow::build(&self.inner, window).map(|cw| cw.quiver().vertex_count()).map_err(err)
    }

    /// Failed random mutation sequences, as dicts.
    #[pyo3(signature = (depth = 5, trials = 20, seed = 0))]
    fn probe(&self, py: Python<'_>, depth: usize, trials: usize, seed: u64) -> PyResult<Py<PyAny>> {
        let qp = self.inner.clone();
        let r = py.detach(move || probe_nondegeneracy(&qp, depth, trials, seed));
        from_json(py, serde_json::to_string(&r).expect("probe report serializes"))
    }

    fn __repr__(&self) -> String {
        format!("QP({}: {} vertices, {} arrows, {} terms)", self.name, self.vertex_count(), self.arrow_count(), self.term_count())
    }
}

#[pyclass(name = "Algebra", module = "qpforge_py", frozen)]
struct PyAlgebra {
    inner: PresentedAlgebra,
}

#[pymethods]
impl PyAlgebra {
    /// A subalgebra figure given by a quiver with relations.
    #[staticmethod]
    #[pyo3(signature = (id, lambda_ = "2"))]
    fn figure(id: &str, lambda_: &str) -> PyResult<PyAlgebra> {
        let f = Catalog::from_env().figure(id).map_err(err)?;
        Ok(PyAlgebra { inner: f.algebra(&lambda(lambda_)?).map_err(err)? })
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    /// Row `i` is the dimension vector of the projective at vertex `i + 1`.
    fn projectives(&self) -> Vec<Vec<i64>> {
        self.inner.projective_dim_vectors()
    }

    /// Basis paths, written right to left.
    fn basis(&self) -> Vec<String> {
        let q = self.inner.quiver();
        self.inner.basis().iter().map(|p| if p.is_empty() { format!("e{}", q.label(p.source)) } else { q.word(p) }).collect()
    }

    fn forms(&self) -> PyResult<PyForms> {
        let c = self.inner.cartan_matrix().map_err(err)?;
        Ok(PyForms { inner: FormData::new(&c).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        format!("Algebra({} vertices, dimension {})", self.vertex_count(), self.dimension())
    }
}

#[pyclass(name = "Forms", module = "qpforge_py", frozen)]
struct PyForms {
    inner: FormData,
}

#[pymethods]
impl PyForms {
    fn cartan(&self) -> Vec<Vec<i64>> {
        self.inner.cartan().clone()
    }

    fn coxeter_matrix(&self) -> Vec<Vec<i64>> {
        self.inner.coxeter_matrix().clone()
    }

    fn euler(&self, x: Vec<i64>, y: Vec<i64>) -> PyResult<i64> {
        self.inner.euler_form(&x, &y).map_err(err)
    }

    fn chi(&self, x: Vec<i64>) -> PyResult<i64> {
        self.inner.chi(&x).map_err(err)
    }

    fn coxeter(&self, d: Vec<i64>) -> PyResult<Vec<i64>> {
        self.inner.coxeter_apply(&d).map_err(err)
    }

    #[pyo3(signature = (d, max_period = 24))]
    fn tau_orbit(&self, d: Vec<i64>, max_period: usize) -> PyResult<(Vec<Vec<i64>>, usize)> {
        self.inner.tau_orbit(&d, max_period).map_err(err)
    }

    #[getter]
    fn corank(&self) -> usize {
        self.inner.corank()
    }

    #[getter]
    fn non_negative(&self) -> bool {
        self.inner.is_non_negative()
    }

    fn radical_basis(&self) -> Vec<Vec<i64>> {
        self.inner.radical_basis().to_vec()
    }

    fn radical_generator(&self) -> PyResult<Vec<i64>> {
        self.inner.radical_generator().map_err(err)
    }
}

#[pyfunction]
fn cases() -> Vec<&'static str> {
    CASES.to_vec()
}

#[pyfunction]
fn figures() -> Vec<&'static str> {
    FIGURES.to_vec()
}

/// Run the verification suite for a case; returns `(all_pass, report_dict)`.
#[pyfunction]
#[pyo3(signature = (case, lambda_ = "2", window = 3, trials = 20, seed = 0))]
fn verify(py: Python<'_>, case: &str, lambda_: &str, window: usize, trials: usize, seed: u64) -> PyResult<(bool, Py<PyAny>)> {
    let opts = VerifyOptions { lambda: lambda(lambda_)?, window, trials, seed, ..Default::default() };
    let case = case.to_string();
    let report = py.detach(move || verify_case(&Catalog::from_env(), &case, &opts));
    Ok((report.all_pass(), from_json(py, report.to_json())?))
}

#[pymodule]
fn qpforge_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQp>()?;
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyForms>()?;
    m.add_function(wrap_pyfunction!(cases, m)?)?;
    m.add_function(wrap_pyfunction!(figures, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("QpforgeError", m.py().get_type::<QpforgeError>())?;
    Ok(())
}
