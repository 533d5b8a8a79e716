//! Python bindings: equations and certificates as objects, plus JSON entry
//! points mirroring the `qdep` command line.

use num_bigint::BigInt;
use num_complex::Complex64;
use pyo3::exceptions::{PyNotImplementedError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde_json::Value;

use qdep_core::cli::document::{
    group_value, subgroup_value, verdict_value, witness_value, EquationDocument, GmDocument, VerifyDocument,
};
use qdep_core::criterion::{self, Verdict};
use qdep_core::exactalg::IntMatrix;
use qdep_core::gm_subgroups;
use qdep_core::ratfun::FactoredRatFun;
use qdep_core::theta::{self, ThetaParams};
use qdep_core::witness::{self, Witness};
use qdep_core::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Invalid(_) | Error::DomainMismatch => PyValueError::new_err(e.to_string()),
        Error::Unsupported(_) => PyNotImplementedError::new_err(e.to_string()),
        Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialise")
}

fn parse_equation(text: &str) -> qdep_core::Result<FactoredRatFun> {
    EquationDocument::parse(text)?.build()
}

/// A right-hand side `a(z)` in factored form.
#[pyclass(name = "Equation", module = "qdep", frozen)]
struct PyEquation {
    f: FactoredRatFun,
}

#[pymethods]
impl PyEquation {
    /// Parses an equation document (the JSON accepted by `qdep decide`).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyEquation { f: parse_equation(text).map_err(py_err)? })
    }

    #[getter]
    fn t(&self) -> u32 {
        self.f.domain().t()
    }

    #[getter]
    fn orbits(&self) -> Vec<String> {
        self.f.domain().bases().to_vec()
    }

    fn decide(&self) -> PyResult<PyVerdict> {
        Ok(PyVerdict { v: criterion::decide(&self.f).map_err(py_err)? })
    }

    /// Exhaustive certificate search with `max |n_r| <= bound` (default `2t`).
    #[pyo3(signature = (bound=None))]
    fn oracle(&self, bound: Option<u32>) -> Option<PyWitness> {
        let bound = bound.unwrap_or(2 * self.f.domain().t());
        witness::brute_force_oracle(&self.f, bound).map(|w| PyWitness { w })
    }

    fn verify(&self, witness: &PyWitness) -> bool {
        witness::verify(&self.f, &witness.w)
    }

    fn __str__(&self) -> String {
        self.f.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Equation(t={}, a={})", self.f.domain().t(), self.f)
    }
}

#[pyclass(name = "Verdict", module = "qdep", frozen)]
struct PyVerdict {
    v: Verdict,
}

#[pymethods]
impl PyVerdict {
    #[getter]
    fn dependent(&self) -> bool {
        self.v.dependent
    }

    #[getter]
    fn case(&self) -> u8 {
        self.v.case.number()
    }

    #[getter]
    fn zero_rows(&self) -> Vec<usize> {
        self.v.zero_rows.clone()
    }

    #[getter]
    fn witness(&self) -> Option<PyWitness> {
        self.v.witness.clone().map(|w| PyWitness { w })
    }

    #[pyo3(signature = (trace=false))]
    fn to_json(&self, trace: bool) -> String {
        pretty(&verdict_value(&self.v, trace))
    }

    fn __bool__(&self) -> bool {
        self.v.dependent
    }

    fn __repr__(&self) -> String {
        format!("Verdict(dependent={}, case={}, zero_rows={:?})", self.v.dependent, self.v.case.number(), self.v.zero_rows)
    }
}

/// A certificate `(phi, b)` with `phi(a) = sigma_q(b)/b`.
#[pyclass(name = "Witness", module = "qdep", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyWitness {
    w: Witness,
}

#[pymethods]
impl PyWitness {
    #[getter]
    fn phi(&self) -> Vec<BigInt> {
        self.w.phi.n.clone()
    }

    #[getter]
    fn b(&self) -> String {
        self.w.b.to_string()
    }

    #[getter]
    fn z_power(&self) -> BigInt {
        self.w.b.z_power().clone()
    }

    fn to_json(&self) -> String {
        pretty(&witness_value(&self.w, true))
    }

    fn __repr__(&self) -> String {
        format!("Witness(phi={}, b={})", self.w.phi, self.w.b)
    }
}

/// `qdep decide` on a JSON document; returns the JSON report.
#[pyfunction]
#[pyo3(signature = (text, trace=false))]
fn decide_json(text: &str, trace: bool) -> PyResult<String> {
    let f = parse_equation(text).map_err(py_err)?;
    Ok(pretty(&verdict_value(&criterion::decide(&f).map_err(py_err)?, trace)))
}

/// `qdep verify` on `{"equation": ..., "witness": ...}`.
#[pyfunction]
fn verify_json(text: &str) -> PyResult<bool> {
    let doc: VerifyDocument = serde_json::from_str(text).map_err(|e| PyValueError::new_err(format!("schema: {e}")))?;
    let f = doc.equation.build().map_err(py_err)?;
    let w = doc.witness.build(f.domain()).map_err(py_err)?;
    Ok(witness::verify(&f, &w))
}

/// `qdep gm-group` on a monomial system or an explicit matrix.
#[pyfunction]
fn gm_group_json(text: &str) -> PyResult<String> {
    let doc: GmDocument = serde_json::from_str(text).map_err(|e| PyValueError::new_err(format!("schema: {e}")))?;
    let v = match &doc.matrix {
        Some(rows) => group_value(&group_structure_checked(doc.t, rows)?),
        None => subgroup_value(&gm_subgroups::solve(&doc.system().map_err(py_err)?).map_err(py_err)?),
    };
    Ok(pretty(&v))
}

fn group_structure_checked<T: Into<BigInt> + Clone>(t: usize, rows: &[Vec<T>]) -> PyResult<gm_subgroups::GroupStructure> {
    if rows.iter().any(|r| r.len() != t) {
        return Err(PyValueError::new_err(format!("matrix rows must have length t = {t}")));
    }
    Ok(gm_subgroups::group_structure(&IntMatrix::from_rows(t, rows), t))
}

/// `(free_rank, torsion)` of `{x : x^row = 1 for every row}` in `(K^*)^t`.
#[pyfunction]
fn group_structure(t: usize, rows: Vec<Vec<BigInt>>) -> PyResult<(usize, Vec<BigInt>)> {
    let g = group_structure_checked(t, &rows)?;
    Ok((g.free_rank, g.torsion))
}

/// `max |L(qz)/L(z) - 1|` over default samples for
/// `L(z) = prod_r theta(zeta^r z)^{n_r}`.
#[pyfunction]
#[pyo3(signature = (q, n, samples=32, truncation=40))]
fn theta_residual(q: Complex64, n: Vec<i64>, samples: usize, truncation: usize) -> PyResult<f64> {
    let p = ThetaParams::with_default_samples(q, truncation, samples, n.len() as u32).map_err(py_err)?;
    Ok(theta::phi_invariance_residual(&p, &n))
}

#[pymodule]
fn qdep(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyEquation>()?;
    m.add_class::<PyVerdict>()?;
    m.add_class::<PyWitness>()?;
    m.add_function(wrap_pyfunction!(decide_json, m)?)?;
    m.add_function(wrap_pyfunction!(verify_json, m)?)?;
    m.add_function(wrap_pyfunction!(gm_group_json, m)?)?;
    m.add_function(wrap_pyfunction!(group_structure, m)?)?;
    m.add_function(wrap_pyfunction!(theta_residual, m)?)?;
    Ok(())
}
