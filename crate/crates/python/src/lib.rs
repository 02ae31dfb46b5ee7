//! Python bindings. Operators, domains and reports cross the boundary as JSON
//! strings in the same schema as the command-line problem files.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use eigenbound::bounds::{self, DomainInput};
use eigenbound::geometry::{self, DomainSpec, Shape};
use eigenbound::oracle;
use eigenbound::radial::OperatorSpec;
use eigenbound::specfun::{self, BesselOrder, Family};
use eigenbound::Error;

pub fn parse_operator(json: &str) -> Result<OperatorSpec, Error> {
    let op: OperatorSpec = serde_json::from_str(json).map_err(|e| Error::Argument(format!("operator: {e}")))?;
    op.validate()?;
    Ok(op)
}

pub fn parse_domain(json: &str, dimension: Option<usize>) -> Result<DomainSpec, Error> {
    let shape: Shape = serde_json::from_str(json).map_err(|e| Error::Argument(format!("domain: {e}")))?;
    DomainSpec::new(shape, dimension)
}

fn parse_family(family: &str) -> Result<Family, Error> {
    match family {
        "J" | "j" => Ok(Family::J),
        "Y" | "y" => Ok(Family::Y),
        other => Err(Error::Argument(format!("family must be \"J\" or \"Y\", got {other:?}"))),
    }
}

/// Bound report as JSON for a shape domain, or for a bare inradius when
/// `domain` is None.
pub fn report_json(
    operator: &str,
    domain: Option<&str>,
    dimension: Option<usize>,
    inradius: Option<f64>,
    convex: bool,
    k_max: usize,
    tol: f64,
) -> Result<String, Error> {
    let op = parse_operator(operator)?;
    let input = match (domain, inradius) {
        (Some(d), None) => DomainInput::Shape(parse_domain(d, dimension.or(op.dimension()))?),
        (None, Some(r)) => DomainInput::InradiusOnly { inradius: r, convex },
        _ => return Err(Error::Argument("give exactly one of domain and inradius".into())),
    };
    let report = bounds::full_report(&op, &input, k_max, tol)?;
    Ok(serde_json::to_string(&report).expect("reports serialize"))
}

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Numeric(_) | Error::Construction(_) | Error::SingularPoint(_) | Error::Consistency(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

#[pyfunction]
#[pyo3(signature = (operator, domain=None, *, dimension=None, inradius=None, convex=false, k_max=64, tol=1e-8))]
fn full_report(
    operator: &str,
    domain: Option<&str>,
    dimension: Option<usize>,
    inradius: Option<f64>,
    convex: bool,
    k_max: usize,
    tol: f64,
) -> PyResult<String> {
    report_json(operator, domain, dimension, inradius, convex, k_max, tol).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (domain, dimension=None))]
fn inradius(domain: &str, dimension: Option<usize>) -> PyResult<f64> {
    parse_domain(domain, dimension).and_then(|d| geometry::inradius(&d)).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (domain, delta, dimension=None))]
fn dilated_inradius(domain: &str, delta: f64, dimension: Option<usize>) -> PyResult<f64> {
    parse_domain(domain, dimension).and_then(|d| geometry::dilated_inradius(&d, delta)).map_err(to_py)
}

#[pyfunction]
fn bessel_j(nu: f64, x: f64) -> PyResult<f64> {
    specfun::bessel_j(nu, x).map_err(to_py)
}

#[pyfunction]
fn bessel_y(nu: f64, x: f64) -> PyResult<f64> {
    specfun::bessel_y(nu, x).map_err(to_py)
}

#[pyfunction]
fn bessel_zero(nu: f64, family: &str, k: usize) -> PyResult<f64> {
    let f = parse_family(family).map_err(to_py)?;
    BesselOrder::new(nu).and_then(|o| specfun::bessel_zero(o, f, k)).map(|z| z.value).map_err(to_py)
}

#[pyfunction]
fn shoot_ball(operator: &str, radius: f64, tol: f64) -> PyResult<f64> {
    parse_operator(operator)
        .and_then(|op| oracle::radial_shoot_ball_lambda1(&op, radius, tol))
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (domain, h, tol=1e-10))]
fn grid_lambda1(domain: &str, h: f64, tol: f64) -> PyResult<f64> {
    parse_domain(domain, Some(2))
        .and_then(|d| oracle::fd_laplacian_lambda1(&d, h, tol))
        .map(|r| r.lambda_h)
        .map_err(to_py)
}

#[pymodule]
fn eigenbound_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(full_report, m)?)?;
    m.add_function(wrap_pyfunction!(inradius, m)?)?;
    m.add_function(wrap_pyfunction!(dilated_inradius, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_j, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_y, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_zero, m)?)?;
    m.add_function(wrap_pyfunction!(shoot_ball, m)?)?;
    m.add_function(wrap_pyfunction!(grid_lambda1, m)?)?;
    Ok(())
}
