//! Python bindings. Grids are passed as flat sample lists on an interval;
//! operators as nested lists of complex numbers.

use ::almost_hilbert::hilbert_embed::Weights;
use ::almost_hilbert::integral_ops::{self, PeriodicSignal};
use ::almost_hilbert::ks2::{self, CubeSystem};
use ::almost_hilbert::numerics::ComplexMatrix;
use ::almost_hilbert::operator_algebra::{self as ops, BOperator};
use ::almost_hilbert::sbasis::{self, GridFunction, Interval};
use ::almost_hilbert::{schatten, suites, Error};
use num_complex::Complex64;
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io(e) => PyOSError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn grid(samples: Vec<Complex64>, lo: f64, hi: f64) -> PyResult<GridFunction> {
    let n = samples.len();
    GridFunction::new(vec![Interval::new(lo, hi)], n, samples).map_err(to_py)
}

fn matrix(rows: Vec<Vec<Complex64>>) -> PyResult<ComplexMatrix> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
        return Err(PyValueError::new_err("ragged matrix"));
    }
    ComplexMatrix::from_row_major(r, c, rows.into_iter().flatten().collect()).map_err(to_py)
}

fn rows(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Finite-rank operator on the weighted coefficient space.
#[pyclass(name = "Operator", module = "almost_hilbert", skip_from_py_object)]
#[derive(Clone)]
struct PyOperator(BOperator);

#[pymethods]
impl PyOperator {
    /// `weights` defaults to the dyadic sequence 1/2, 1/4, ...
    #[new]
    #[pyo3(signature = (matrix_rows, weights=None))]
    fn new(matrix_rows: Vec<Vec<Complex64>>, weights: Option<Vec<f64>>) -> PyResult<Self> {
        let m = matrix(matrix_rows)?;
        let w = match weights {
            Some(t) => Weights::custom(t).map_err(to_py)?,
            None => Weights::dyadic(m.rows()),
        };
        BOperator::new(m, w).map(Self).map_err(to_py)
    }

    #[staticmethod]
    #[pyo3(signature = (n, seed=0, selfadjoint=false))]
    fn random(n: usize, seed: u64, selfadjoint: bool) -> Self {
        let mut rng = ::almost_hilbert::rng::seeded(seed);
        let w = Weights::dyadic(n);
        Self(if selfadjoint {
            ops::random_selfadjoint(&mut rng, &w)
        } else {
            ops::random_operator(&mut rng, &w)
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn weights(&self) -> Vec<f64> {
        self.0.weights().as_slice().to_vec()
    }

    fn matrix(&self) -> Vec<Vec<Complex64>> {
        rows(self.0.matrix())
    }

    /// Matrix of the operator in an orthonormal basis of the Hilbert completion.
    fn h_matrix(&self) -> Vec<Vec<Complex64>> {
        rows(&self.0.h_matrix())
    }

    fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    fn compose(&self, other: &Self) -> PyResult<Self> {
        self.0.compose(&other.0).map(Self).map_err(to_py)
    }

    fn apply(&self, coefficients: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
        if coefficients.len() != self.0.dim() {
            return Err(PyValueError::new_err("coefficient length does not match the operator"));
        }
        Ok(self.0.apply(&coefficients))
    }

    fn h_norm(&self) -> PyResult<f64> {
        self.0.h_norm().map_err(to_py)
    }

    #[pyo3(signature = (tol=1e-10))]
    fn is_selfadjoint(&self, tol: f64) -> bool {
        ops::is_naturally_selfadjoint(&self.0, tol)
    }

    fn singular_values(&self) -> PyResult<Vec<f64>> {
        schatten::singular_values(&self.0).map_err(to_py)
    }

    fn schatten_norm(&self, p: f64) -> PyResult<f64> {
        schatten::schatten_norm(&self.0, p).map_err(to_py)
    }

    /// `(U, T)` with `A = U T` and `T = (A*A)^{1/2}`.
    #[pyo3(signature = (tol=1e-12))]
    fn polar(&self, tol: f64) -> PyResult<(Self, Self)> {
        let p = ops::polar_decompose(&self.0, tol).map_err(to_py)?;
        Ok((Self(p.u), Self(p.t)))
    }

    /// Distinct eigenvalues (descending) of a self-adjoint operator.
    #[pyo3(signature = (tol=1e-10))]
    fn eigenvalues(&self, tol: f64) -> PyResult<Vec<f64>> {
        ops::spectral_decompose(&self.0, tol).map(|s| s.eigenvalues).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Operator(dim={})", self.0.dim())
    }
}

/// JSON report of a verification suite.
#[pyfunction]
#[pyo3(signature = (suite="all", seed=0, dim=None, grid=None, p=None, q=None, alpha=None, trials=None, tol=None, cubes=None))]
#[allow(clippy::too_many_arguments)]
fn run_suite(
    suite: &str,
    seed: u64,
    dim: Option<usize>,
    grid: Option<usize>,
    p: Option<f64>,
    q: Option<f64>,
    alpha: Option<f64>,
    trials: Option<usize>,
    tol: Option<f64>,
    cubes: Option<usize>,
) -> PyResult<String> {
    let params = suites::SuiteParams {
        seed,
        dim,
        grid,
        p,
        q,
        alpha,
        trials,
        tol,
        cubes,
    };
    suites::run_suite(suite, &params).map(|r| r.to_json()).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (suite="all"))]
fn check_names(suite: &str) -> PyResult<Vec<&'static str>> {
    suites::check_names(suite).map_err(to_py)
}

#[pyfunction]
fn pairing_order(k: u64) -> PyResult<(u64, u64)> {
    ks2::pairing_order(k).map_err(to_py)
}

#[pyfunction]
fn pairing_index(l: u64, i: u64) -> PyResult<u64> {
    ks2::pairing_index(l, i).map_err(to_py)
}

/// KS² norm of a one-dimensional function sampled on `[0, 1]`.
#[pyfunction]
#[pyo3(signature = (samples, cubes=256))]
fn ks2_norm(samples: Vec<Complex64>, cubes: usize) -> PyResult<f64> {
    let f = grid(samples, 0.0, 1.0)?;
    let sys = CubeSystem::unit(1, cubes).map_err(to_py)?;
    ks2::ks2_norm(&f, cubes, &sys).map_err(to_py)
}

/// Periodic Hilbert transform of samples on `[0, 1)`.
#[pyfunction]
fn hilbert_transform(samples: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
    let f = PeriodicSignal::new(samples).map_err(to_py)?;
    Ok(integral_ops::hilbert_multiplier(&f).samples().to_vec())
}

/// Principal-value quadrature with excluded half-width `eps`.
#[pyfunction]
fn hilbert_pv(samples: Vec<Complex64>, eps: f64) -> PyResult<Vec<Complex64>> {
    let f = PeriodicSignal::new(samples).map_err(to_py)?;
    integral_ops::hilbert_pv(&f, eps).map(|g| g.samples().to_vec()).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (samples, alpha, lo=0.0, hi=1.0))]
fn riesz_potential(samples: Vec<Complex64>, alpha: f64, lo: f64, hi: f64) -> PyResult<Vec<Complex64>> {
    let f = grid(samples, lo, hi)?;
    integral_ops::riesz_potential(&f, alpha).map(|g| g.samples().to_vec()).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (samples, p, lo=0.0, hi=1.0))]
fn duality_map(samples: Vec<Complex64>, p: f64, lo: f64, hi: f64) -> PyResult<Vec<Complex64>> {
    let f = grid(samples, lo, hi)?;
    sbasis::duality_map(&f, p).map(|g| g.samples().to_vec()).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (samples, p, lo=0.0, hi=1.0))]
fn lp_norm(samples: Vec<Complex64>, p: f64, lo: f64, hi: f64) -> PyResult<f64> {
    sbasis::lp_norm(&grid(samples, lo, hi)?, p).map_err(to_py)
}

#[pymodule]
#[pyo3(name = "almost_hilbert")]
fn bindings(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyOperator>()?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(check_names, m)?)?;
    m.add_function(wrap_pyfunction!(pairing_order, m)?)?;
    m.add_function(wrap_pyfunction!(pairing_index, m)?)?;
    m.add_function(wrap_pyfunction!(ks2_norm, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_transform, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_pv, m)?)?;
    m.add_function(wrap_pyfunction!(riesz_potential, m)?)?;
    m.add_function(wrap_pyfunction!(duality_map, m)?)?;
    m.add_function(wrap_pyfunction!(lp_norm, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
