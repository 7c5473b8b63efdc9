//! Python bindings. Rationals cross the boundary as `"p/q"` strings (plain
//! integers without the denominator); matrices as nested lists of those.

use biperiodic::identities::{grid_preset, run_suite, SuiteConfig};
use biperiodic::matrix_seq::{self, MatrixKind, Source};
use biperiodic::series;
use biperiodic::{Error, Mat2, Rational, SeqParams};
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::DivisionByZero => PyZeroDivisionError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Accepts `int`, `str` ("p/q") or anything whose `str()` is in that form,
/// such as `fractions.Fraction`. Floats are refused.
fn to_rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let text = obj.str()?.to_string();
    text.parse().map_err(py_err)
}

fn matrix(m: &Mat2<Rational>) -> Vec<Vec<String>> {
    m.to_strings().into_iter().map(Vec::from).collect()
}

fn source(name: &str) -> PyResult<Source> {
    match name {
        "rec" => Ok(Source::Recurrence),
        "closed" => Ok(Source::ClosedForm),
        "binet" => Ok(Source::Binet),
        _ => Err(PyValueError::new_err(format!("source must be rec, closed or binet, got {name:?}"))),
    }
}

#[pyclass(frozen, name = "Params", module = "biperiodic_py")]
struct Params {
    inner: SeqParams,
}

#[pymethods]
impl Params {
    #[new]
    fn new(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<Self> {
        let inner = SeqParams::new(to_rational(a)?, to_rational(b)?).map_err(py_err)?;
        Ok(Params { inner })
    }

    #[getter]
    fn a(&self) -> String {
        self.inner.a.to_string()
    }

    #[getter]
    fn b(&self) -> String {
        self.inner.b.to_string()
    }

    /// False when `ab = -4`, where the Binet forms are undefined.
    #[getter]
    fn binet_allowed(&self) -> bool {
        self.inner.binet_allowed()
    }

    fn q(&self, n: i64) -> String {
        biperiodic::sequences::q(&self.inner, n).to_string()
    }

    fn l(&self, n: i64) -> String {
        biperiodic::sequences::l(&self.inner, n).to_string()
    }

    #[pyo3(signature = (n, source = "closed"))]
    fn fib_matrix(&self, n: i64, source: &str) -> PyResult<Vec<Vec<String>>> {
        let t = matrix_seq::matrix_term(&self.inner, MatrixKind::Fib, n, self::source(source)?).map_err(py_err)?;
        Ok(matrix(&t.matrix))
    }

    #[pyo3(signature = (n, source = "closed"))]
    fn lucas_matrix(&self, n: i64, source: &str) -> PyResult<Vec<Vec<String>>> {
        let t = matrix_seq::matrix_term(&self.inner, MatrixKind::Lucas, n, self::source(source)?).map_err(py_err)?;
        Ok(matrix(&t.matrix))
    }

    /// `det(L_n)` from its closed form `(ab + 4)(-a/b)^(1 + eps(n))`.
    fn lucas_det(&self, n: i64) -> String {
        matrix_seq::lucas_det(&self.inner, n).to_string()
    }

    fn cassini(&self, n: i64) -> bool {
        matrix_seq::cassini_lucas(&self.inner, n)
    }

    /// First `order` coefficients of the Lucas matrix generating function.
    fn generating_series(&self, order: usize) -> PyResult<Vec<Vec<Vec<String>>>> {
        let s = series::lucas_generating_series(&self.inner, order).map_err(py_err)?;
        Ok(s.coeffs().iter().map(matrix).collect())
    }

    /// `L_0 + ... + L_{n-1}` from the closed form.
    fn partial_sum(&self, n: u64) -> PyResult<Vec<Vec<String>>> {
        Ok(matrix(&series::lucas_partial_sum(&self.inner, n).map_err(py_err)?))
    }

    fn __repr__(&self) -> String {
        format!("Params(a='{}', b='{}')", self.inner.a, self.inner.b)
    }
}

/// Runs the identity suite and returns the report as a dict. With `grid`
/// set, `a`/`b` are ignored.
#[pyfunction]
#[pyo3(signature = (a = None, b = None, grid = None, n_max = 10))]
fn verify<'py>(
    py: Python<'py>,
    a: Option<&Bound<'py, PyAny>>,
    b: Option<&Bound<'py, PyAny>>,
    grid: Option<&str>,
    n_max: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let (name, params) = match grid {
        Some(g) => {
            let params = grid_preset(g).ok_or_else(|| PyValueError::new_err(format!("unknown grid {g:?}")))?;
            (g.to_string(), params)
        }
        None => {
            let one = Rational::one();
            let a = a.map(to_rational).transpose()?.unwrap_or_else(|| one.clone());
            let b = b.map(to_rational).transpose()?.unwrap_or(one);
            let p = SeqParams::new(a, b).map_err(py_err)?;
            (format!("a={},b={}", p.a, p.b), vec![p])
        }
    };
    let cfg = SuiteConfig::new(name, n_max);
    let report = py.detach(|| run_suite(&params, &cfg)).map_err(py_err)?;
    py.import("json")?.call_method1("loads", (report.to_json_pretty(),))
}

#[pymodule]
fn biperiodic_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Params>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
