//! Python module `ncimc`: instances, L-functions, class evaluations, Iwasawa
//! limits and the connecting map. Values come back in canonical text form;
//! core errors are raised as `ValueError`.

use ncimc_core::iwasawa::{coker_tower as tower, limit_module, mc_report};
use ncimc_core::relative_k::{block_reduction, d_connecting as d_map};
use ncimc_core::suite::instance_checks;
use ncimc_core::{
    derived_cohomology, euler_product as euler, fitting_ideal as fitting, fixtures, ncl_evaluate,
    ncl_from_points, trace_formula_l, CoeffRing, Elem, Error, Instance as CoreInstance, Matrix,
    Poly, PolyRing, Ring,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn ring(ell: u64, m: u32, minpoly: Option<Vec<i64>>) -> PyResult<CoeffRing> {
    CoeffRing::new(ell, m, &minpoly.unwrap_or_else(|| vec![0, 1])).map_err(py_err)
}

fn square<T: Clone>(rows: Vec<Vec<T>>) -> PyResult<Matrix<T>> {
    let m = Matrix::from_rows(rows).map_err(py_err)?;
    if m.rows() == 0 || !m.is_square() {
        return Err(PyValueError::new_err("expected a nonempty square matrix"));
    }
    Ok(m)
}

fn int_matrix(r: &CoeffRing, rows: Vec<Vec<i64>>) -> PyResult<Matrix<Elem>> {
    square(rows.into_iter().map(|row| row.into_iter().map(|c| r.from_int(c)).collect()).collect())
}

fn poly_matrix(r: &CoeffRing, rows: Vec<Vec<Vec<i64>>>) -> PyResult<Matrix<Poly>> {
    square(rows.into_iter().map(|row| row.iter().map(|cs| Poly::from_ints(r, cs)).collect()).collect())
}

/// `Omega = (Z/ell^m)[x]/(minpoly)`.
#[pyclass(name = "CoeffRing", frozen)]
struct PyCoeffRing {
    inner: CoeffRing,
}

#[pymethods]
impl PyCoeffRing {
    #[new]
    #[pyo3(signature = (ell, m, minpoly=None))]
    fn new(ell: u64, m: u32, minpoly: Option<Vec<i64>>) -> PyResult<Self> {
        Ok(PyCoeffRing { inner: ring(ell, m, minpoly)? })
    }

    #[getter]
    fn ell(&self) -> u64 {
        self.inner.ell()
    }

    #[getter]
    fn m(&self) -> u32 {
        self.inner.m()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    /// Canonical text of the element with the given coordinates.
    fn render(&self, coords: Vec<i64>) -> PyResult<String> {
        if coords.len() > self.inner.degree() {
            return Err(PyValueError::new_err("too many coordinates"));
        }
        Ok(self.inner.render(&self.inner.elem(&coords)))
    }

    fn is_unit(&self, coords: Vec<i64>) -> bool {
        self.inner.is_unit(&self.inner.elem(&coords))
    }

    /// Whether the polynomial with these integer coefficients lies in `P`.
    fn is_in_p(&self, coeffs: Vec<i64>) -> bool {
        ncimc_core::is_in_p(&self.inner, &Poly::from_ints(&self.inner, &coeffs))
    }

    fn is_in_s(&self, coeffs: Vec<i64>) -> bool {
        ncimc_core::is_in_s(&self.inner, &Poly::from_ints(&self.inner, &coeffs))
    }

    fn __repr__(&self) -> String {
        format!("CoeffRing(ell={}, m={}, minpoly={:?})", self.inner.ell(), self.inner.m(), self.inner.minpoly())
    }
}

/// A parsed instance file.
#[pyclass(name = "Instance", frozen)]
struct PyInstance {
    inner: CoreInstance,
}

#[pymethods]
impl PyInstance {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyInstance { inner: CoreInstance::parse(text).map_err(py_err)? })
    }

    /// A shipped fixture by name, e.g. `"s3-gamma"`.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        let text = fixtures::by_name(name).ok_or_else(|| PyValueError::new_err(format!("no fixture {name}")))?;
        Self::parse(text)
    }

    #[staticmethod]
    fn fixture_names() -> Vec<&'static str> {
        fixtures::COVERINGS.iter().map(|(n, _)| *n).collect()
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn rep_names(&self) -> Vec<String> {
        self.inner.reps.iter().map(|r| r.name.clone()).collect()
    }

    #[getter]
    fn group_order(&self) -> usize {
        self.inner.covering.group.order()
    }

    fn render(&self) -> String {
        self.inner.render()
    }

    #[pyo3(signature = (precision=32, rep=None))]
    fn euler_product(&self, precision: usize, rep: Option<&str>) -> PyResult<String> {
        let twist = match rep {
            Some(name) => Some(
                self.inner
                    .rep(name)
                    .ok_or_else(|| PyValueError::new_err(format!("no representation {name}")))?,
            ),
            None => None,
        };
        let cov = &self.inner.covering;
        Ok(euler(cov, &self.inner.sheaf, twist, precision).render(&cov.ring))
    }

    /// Stored cohomology if present, else the cohomology of the points.
    fn trace_formula(&self) -> String {
        let cov = &self.inner.covering;
        let coh = self
            .inner
            .cohomology
            .clone()
            .unwrap_or_else(|| derived_cohomology(cov, &self.inner.sheaf, None));
        trace_formula_l(&cov.ring, &coh).render(&cov.ring)
    }

    fn ncl_class(&self) -> PyResult<String> {
        Ok(ncl_from_points(&self.inner.covering, &self.inner.sheaf).map_err(py_err)?.render())
    }

    fn evaluate(&self, rep: &str) -> PyResult<String> {
        let rho = self
            .inner
            .rep(rep)
            .ok_or_else(|| PyValueError::new_err(format!("no representation {rep}")))?;
        let class = ncl_from_points(&self.inner.covering, &self.inner.sheaf).map_err(py_err)?;
        Ok(ncl_evaluate(&class, rho).map_err(py_err)?.render(&self.inner.covering.ring))
    }

    /// `(name, left, right, passed)` for every stored check.
    #[pyo3(signature = (precision=32))]
    fn verify(&self, precision: usize) -> PyResult<Vec<(String, String, String, bool)>> {
        Ok(instance_checks(&self.inner, precision)
            .map_err(py_err)?
            .into_iter()
            .map(|c| (c.name, c.left, c.right, c.pass))
            .collect())
    }
}

/// Layer invariants of `coker(1 - Phi^(l^n))` for `n <= n_max`, as exponents.
#[pyfunction]
#[pyo3(signature = (ell, m, phi, n_max=4))]
fn coker_tower(ell: u64, m: u32, phi: Vec<Vec<i64>>, n_max: usize) -> PyResult<Vec<Vec<u32>>> {
    let r = ring(ell, m, None)?;
    let t = tower(&r, &int_matrix(&r, phi)?, n_max).map_err(py_err)?;
    Ok(t.layers.into_iter().map(|l| l.invariants).collect())
}

#[pyfunction]
fn fitting_ideal(ell: u64, m: u32, phi: Vec<Vec<i64>>) -> PyResult<String> {
    let r = ring(ell, m, None)?;
    let module = limit_module(&r, &int_matrix(&r, phi)?).map_err(py_err)?;
    Ok(fitting(&r, &module).render(&r))
}

/// `(holds, fitting ideal, char element, unit certificate or None)`.
#[pyfunction]
#[pyo3(signature = (ell, m, phi, precision=16))]
fn mc_verify(ell: u64, m: u32, phi: Vec<Vec<i64>>, precision: usize) -> PyResult<(bool, String, String, Option<String>)> {
    let r = ring(ell, m, None)?;
    let rep = mc_report(&r, &int_matrix(&r, phi)?, precision).map_err(py_err)?;
    Ok((
        rep.holds(),
        rep.fitting.render(&r),
        rep.char_element.render(&r),
        rep.certificate.map(|u| u.render(&r)),
    ))
}

/// `d(alpha)` for a matrix of coefficient lists in `T`.
#[pyfunction]
fn d_connecting(ell: u64, m: u32, alpha: Vec<Vec<Vec<i64>>>) -> PyResult<String> {
    let r = ring(ell, m, None)?;
    Ok(d_map(&r, &poly_matrix(&r, alpha)?).map_err(py_err)?.render(&r))
}

#[pyfunction]
fn block_reduction_check(ell: u64, m: u32, alpha: Vec<Vec<Vec<i64>>>, blocks: usize) -> PyResult<bool> {
    if blocks == 0 {
        return Err(PyValueError::new_err("blocks must be positive"));
    }
    let r = ring(ell, m, None)?;
    Ok(block_reduction(&PolyRing::new(r.clone()), &poly_matrix(&r, alpha)?, blocks).holds())
}

#[pymodule]
fn ncimc(module: &Bound<'_, PyModule>) -> PyResult<()> {
    module.add_class::<PyCoeffRing>()?;
    module.add_class::<PyInstance>()?;
    module.add_function(wrap_pyfunction!(coker_tower, module)?)?;
    module.add_function(wrap_pyfunction!(fitting_ideal, module)?)?;
    module.add_function(wrap_pyfunction!(mc_verify, module)?)?;
    module.add_function(wrap_pyfunction!(d_connecting, module)?)?;
    module.add_function(wrap_pyfunction!(block_reduction_check, module)?)?;
    Ok(())
}
