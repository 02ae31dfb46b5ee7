//! Route selection and assembly of certified lower and upper bounds.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{self, solve_delta_with, DomainSpec};
use crate::radial::{
    build_theorem1_profile, build_theorem2_profile, radial_ode_coefficients, verify_supersolution,
    OperatorSpec, RadialProfile, ResidualReport,
};
use crate::specfun::{bessel_zero, next_zero_after, BesselOrder, Family};

pub const DEFAULT_K_MAX: usize = 64;
pub const DEFAULT_TOL: f64 = 1e-8;
pub const CERTIFICATE_SAMPLES: usize = 1000;

/// Either a full domain or just its inradius. The bare inradius supports the
/// routes that depend on R alone, which includes unbounded domains.
#[derive(Debug, Clone, PartialEq)]
pub enum DomainInput {
    Shape(DomainSpec),
    InradiusOnly { inradius: f64, convex: bool },
}

impl From<DomainSpec> for DomainInput {
    fn from(d: DomainSpec) -> Self {
        DomainInput::Shape(d)
    }
}

impl DomainInput {
    fn convex(&self) -> bool {
        match self {
            DomainInput::Shape(d) => geometry::is_convex(d),
            DomainInput::InradiusOnly { convex, .. } => *convex,
        }
    }

    fn inradius(&self) -> Result<geometry::Measured> {
        match self {
            DomainInput::Shape(d) => geometry::inradius_measured(d),
            DomainInput::InradiusOnly { inradius, .. } => {
                if inradius.is_finite() && *inradius > 0.0 {
                    Ok(geometry::Measured { value: *inradius, resolution: None })
                } else {
                    Err(Error::Argument(format!("inradius must be finite and positive, got {inradius}")))
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerMethod {
    Theorem1,
    #[serde(rename = "theorem2-J")]
    Theorem2J,
    #[serde(rename = "theorem2-Y")]
    Theorem2Y,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpperMethod {
    BallEigenvalue,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroGap {
    pub x: f64,
    pub y: f64,
    pub k: usize,
    pub family: Family,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub value: f64,
    pub method: LowerMethod,
    pub zero_gap: Option<ZeroGap>,
    pub delta: Option<f64>,
    pub r_delta: Option<f64>,
    pub profile: RadialProfile,
    /// π/2, reported when the scanned J-family gaps y_k − x_k grow strictly.
    pub asymptotic_gap: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UpperBound {
    pub value: f64,
    pub method: UpperMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub profile: RadialProfile,
    pub residual: ResidualReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub operator: OperatorSpec,
    #[serde(rename = "R")]
    pub inradius: f64,
    /// Grid spacing when R came from the numerical search; the lower bound then
    /// uses R + h and the upper bound R − h.
    pub inradius_resolution: Option<f64>,
    pub lower: f64,
    pub lower_method: LowerMethod,
    pub upper: Option<f64>,
    pub upper_method: Option<UpperMethod>,
    pub zero_gap_used: Option<ZeroGap>,
    pub delta_used: Option<f64>,
    #[serde(rename = "R_delta_used")]
    pub r_delta_used: Option<f64>,
    pub asymptotic_gap: Option<f64>,
    pub rfk: Option<f64>,
    pub certificate: Certificate,
}

/// Best Theorem-2 candidate found so far.
struct Candidate {
    lambda: f64,
    gap: ZeroGap,
    delta: f64,
    r_delta: f64,
    eta: f64,
}

pub fn lower_bound(op: &OperatorSpec, domain: &DomainInput, k_max: usize) -> Result<LowerBound> {
    op.validate()?;
    check_dimension(op, domain)?;
    let r = domain.inradius()?;
    // a larger R gives a smaller, hence still valid, lower bound
    let r_safe = r.upper();
    match op {
        OperatorSpec::InfinityLaplacian => {
            let lambda = (PI / (2.0 * r_safe)).powi(2);
            let profile = build_theorem1_profile(op, lambda, r_safe)?;
            return Ok(simple_lower(lambda, LowerMethod::Exact, profile));
        }
        OperatorSpec::GradientLimit => {
            let lambda = 1.0 / r_safe;
            let profile = build_theorem1_profile(op, lambda, r_safe)?;
            return Ok(simple_lower(lambda, LowerMethod::Exact, profile));
        }
        _ => {}
    }
    let form = radial_ode_coefficients(op)?;
    let alpha = form.alpha();
    if alpha > 0.0 {
        let mu = bessel_zero(BesselOrder::new(alpha - 1.0)?, Family::J, 1)?.value;
        let eta = mu / r_safe;
        let lambda = form.lambda_for_eta(eta);
        let profile = build_theorem1_profile(op, lambda, r_safe)?;
        return Ok(simple_lower(lambda, LowerMethod::Theorem1, profile));
    }
    if k_max == 0 {
        return Err(Error::Argument("k_max must be at least 1".into()));
    }
    let convex = domain.convex();
    let shape = match domain {
        DomainInput::Shape(d) => Some(d),
        DomainInput::InradiusOnly { .. } => None,
    };
    if !convex && shape.is_none() {
        return Err(Error::Unsupported(
            "the Theorem-2 route on a nonconvex domain needs the domain shape to compute R_delta".into(),
        ));
    }
    let order = BesselOrder::new(alpha)?;
    let order_m1 = BesselOrder::new(alpha - 1.0)?;
    let mut best: Option<Candidate> = None;
    let mut gaps_increase = true;
    let mut last_gap = f64::NEG_INFINITY;
    for family in [Family::J, Family::Y] {
        for k in 1..=k_max {
            let x = bessel_zero(order, family, k)?.value;
            let y = next_zero_after(order_m1, family, x)?.value;
            if family == Family::J {
                gaps_increase &= y - x > last_gap;
                last_gap = y - x;
            }
            let ratio = x / y;
            let (delta, r_delta) = if convex {
                let delta = r_safe * x / (y - x);
                (delta, r_safe + delta)
            } else {
                let d = shape.expect("checked above");
                solve_delta_with(ratio, r_safe, |dl| {
                    geometry::dilated_inradius_measured(d, dl).map(|m| m.upper())
                })?
            };
            // η·δ = x exactly; η·R_δ ≤ y because δ/R_δ ≥ x/y
            let eta = if convex { (y - x) / r_safe } else { x / delta };
            let lambda = form.lambda_for_eta(eta);
            if best.as_ref().map_or(true, |b| lambda > b.lambda) {
                best = Some(Candidate { lambda, gap: ZeroGap { x, y, k, family }, delta, r_delta, eta });
            }
        }
    }
    let b = best.expect("k_max ≥ 1 yields a candidate");
    let method = match b.gap.family {
        Family::J => LowerMethod::Theorem2J,
        Family::Y => LowerMethod::Theorem2Y,
    };
    // keep η·r_hi inside the increasing range despite rounding
    let r_hi = b.r_delta.min(b.gap.y / b.eta);
    let profile = build_theorem2_profile(op, b.lambda, b.delta, r_hi, b.gap.family)?;
    Ok(LowerBound {
        value: b.lambda,
        method,
        zero_gap: Some(b.gap),
        delta: Some(b.delta),
        r_delta: Some(b.r_delta),
        profile,
        asymptotic_gap: (gaps_increase && k_max >= 2).then_some(PI / 2.0),
    })
}

fn simple_lower(value: f64, method: LowerMethod, profile: RadialProfile) -> LowerBound {
    LowerBound { value, method, zero_gap: None, delta: None, r_delta: None, profile, asymptotic_gap: None }
}

fn check_dimension(op: &OperatorSpec, domain: &DomainInput) -> Result<()> {
    if let (Some(n), DomainInput::Shape(d)) = (op.dimension(), domain) {
        if d.dimension() != n {
            return Err(Error::Argument(format!(
                "operator dimension {n} differs from domain dimension {}",
                d.dimension()
            )));
        }
    }
    Ok(())
}

/// Eigenvalue of the inscribed ball, which bounds λ₁(Ω) from above. Absent
/// for the Pucci operator and for p-Laplacians with α ≤ −1.
pub fn upper_bound(op: &OperatorSpec, domain: &DomainInput) -> Result<Option<UpperBound>> {
    op.validate()?;
    check_dimension(op, domain)?;
    let r = domain.inradius()?;
    let r_safe = r.lower();
    if !(r_safe > 0.0) {
        return Ok(None);
    }
    Ok(match *op {
        OperatorSpec::InfinityLaplacian => Some(UpperBound {
            value: (PI / (2.0 * r_safe)).powi(2),
            method: UpperMethod::Exact,
        }),
        OperatorSpec::GradientLimit => Some(UpperBound { value: 1.0 / r_safe, method: UpperMethod::Exact }),
        OperatorSpec::Laplacian { n } => {
            let mu = bessel_zero(BesselOrder::new(0.5 * n as f64 - 1.0)?, Family::J, 1)?.value;
            Some(UpperBound { value: (mu / r_safe).powi(2), method: UpperMethod::BallEigenvalue })
        }
        OperatorSpec::PLaplacian { .. } => {
            let form = radial_ode_coefficients(op)?;
            let alpha = form.alpha();
            if alpha > -1.0 {
                let mu = bessel_zero(BesselOrder::new(-alpha)?, Family::J, 1)?.value;
                Some(UpperBound {
                    value: form.lambda_for_eta(mu / r_safe),
                    method: UpperMethod::BallEigenvalue,
                })
            } else {
                None
            }
        }
        OperatorSpec::PucciMax { .. } => None,
    })
}

/// Volume-based lower bound for the Laplacian, n ∈ {2, 3}.
pub fn rfk_bound(domain: &DomainSpec) -> Result<f64> {
    let n = domain.dimension();
    if !(n == 2 || n == 3) {
        return Err(Error::Unsupported(format!("RFK bound supported for n = 2, 3, got {n}")));
    }
    rfk_from_volume(n, geometry::volume(domain))
}

/// |Ω|^{−2/n} C_n^{2/n} (μ₁^{(n/2−1)})² from the volume alone.
pub fn rfk_from_volume(n: usize, volume: f64) -> Result<f64> {
    if !(volume.is_finite() && volume > 0.0) {
        return Err(Error::Argument(format!("volume must be finite and positive, got {volume}")));
    }
    let e = 2.0 / n as f64;
    let mu = bessel_zero(BesselOrder::new(0.5 * n as f64 - 1.0)?, Family::J, 1)?.value;
    Ok(volume.powf(-e) * geometry::unit_ball_volume(n).powf(e) * mu * mu)
}

pub fn full_report(op: &OperatorSpec, domain: &DomainInput, k_max: usize, tol: f64) -> Result<BoundReport> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Argument(format!("tol must be finite and positive, got {tol}")));
    }
    let r = domain.inradius()?;
    let lower = lower_bound(op, domain, k_max)?;
    let upper = upper_bound(op, domain)?;
    let residual = verify_supersolution(op, &lower.profile, lower.value, CERTIFICATE_SAMPLES, tol)?;
    if !residual.verified {
        return Err(Error::Consistency(format!(
            "certificate failed: max residual {:e}, min slope {:e}",
            residual.max_residual, residual.min_slope
        )));
    }
    if let Some(u) = upper {
        if lower.value > u.value * (1.0 + 1e-12) {
            return Err(Error::Consistency(format!(
                "lower bound {} exceeds upper bound {}",
                lower.value, u.value
            )));
        }
    }
    let rfk = match (op, domain) {
        (OperatorSpec::Laplacian { n }, DomainInput::Shape(d)) if *n == 2 || *n == 3 => Some(rfk_bound(d)?),
        _ => None,
    };
    Ok(BoundReport {
        operator: *op,
        inradius: r.value,
        inradius_resolution: r.resolution,
        lower: lower.value,
        lower_method: lower.method,
        upper: upper.map(|u| u.value),
        upper_method: upper.map(|u| u.method),
        zero_gap_used: lower.zero_gap,
        delta_used: lower.delta,
        r_delta_used: lower.r_delta,
        asymptotic_gap: lower.asymptotic_gap,
        rfk,
        certificate: Certificate { profile: lower.profile, residual },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PScanRow {
    pub p: f64,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    /// Set when the row was skipped.
    pub note: Option<String>,
}

/// p-Laplacian bounds on a domain of inradius R for each p > n.
pub fn p_limit_scan(n: usize, r: f64, p_list: &[f64]) -> Result<Vec<PScanRow>> {
    if p_list.is_empty() {
        return Err(Error::Argument("p list is empty".into()));
    }
    if p_list.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Argument("p list must be strictly increasing".into()));
    }
    let domain = DomainInput::InradiusOnly { inradius: r, convex: true };
    p_list
        .iter()
        .map(|&p| {
            if !(p > n as f64) {
                return Ok(PScanRow {
                    p,
                    lower: None,
                    upper: None,
                    note: Some(format!("skipped: p = {p} ≤ n = {n}")),
                });
            }
            let op = OperatorSpec::PLaplacian { p, n };
            let lower = lower_bound(&op, &domain, 1)?.value;
            let upper = upper_bound(&op, &domain)?.map(|u| u.value);
            Ok(PScanRow { p, lower: Some(lower), upper, note: None })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_routes() {
        let d = DomainInput::InradiusOnly { inradius: 2.0, convex: false };
        let lb = lower_bound(&OperatorSpec::GradientLimit, &d, 1).unwrap();
        assert_eq!(lb.value, 0.5);
        let ub = upper_bound(&OperatorSpec::InfinityLaplacian, &d).unwrap().unwrap();
        assert!((ub.value - (PI / 4.0).powi(2)).abs() < 1e-15);
    }

    #[test]
    fn nonconvex_theorem2_needs_shape() {
        let d = DomainInput::InradiusOnly { inradius: 1.0, convex: false };
        assert!(lower_bound(&OperatorSpec::Laplacian { n: 2 }, &d, 4).is_err());
    }

    #[test]
    fn p_scan_rejects_bad_lists() {
        assert!(p_limit_scan(2, 1.0, &[]).is_err());
        assert!(p_limit_scan(2, 1.0, &[5.0, 3.0]).is_err());
        let rows = p_limit_scan(2, 1.0, &[2.0, 3.0]).unwrap();
        assert!(rows[0].note.is_some() && rows[1].lower.unwrap() < rows[1].upper.unwrap());
    }
}
