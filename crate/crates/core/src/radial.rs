//! Radial barrier profiles and their pointwise supersolution check.
//!
//! Residuals are oriented so that a non-positive value means the profile is a
//! supersolution at that radius: Lφ + λφ for the second-order operators and
//! max{(φ′)²φ″, λφ − φ′} (the negated min-operator) for the gradient limit.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{bessel_jy, bessel_zero, next_zero_after, BesselOrder, Family};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum OperatorSpec {
    /// Δ in dimension n.
    Laplacian { n: usize },
    /// Homogeneous p-Laplacian (1/p)|∇u|^{2−p} div(|∇u|^{p−2}∇u).
    PLaplacian { p: f64, n: usize },
    /// Normalized ∞-Laplacian.
    InfinityLaplacian,
    /// Pucci maximal operator M⁺ with ellipticity constants γ ≤ Γ.
    PucciMax {
        gamma: f64,
        #[serde(rename = "Gamma")]
        big_gamma: f64,
        n: usize,
    },
    /// min{−Δ∞u, |∇u| − λu} with the un-normalized ∞-Laplacian.
    GradientLimit,
}

impl OperatorSpec {
    pub fn validate(&self) -> Result<()> {
        let dim = |n: usize| {
            if n >= 1 {
                Ok(())
            } else {
                Err(Error::Argument("dimension n must be at least 1".into()))
            }
        };
        match *self {
            OperatorSpec::Laplacian { n } => dim(n),
            OperatorSpec::PLaplacian { p, n } => {
                if !(p.is_finite() && p > 1.0) {
                    return Err(Error::Argument(format!("p must be finite and > 1, got {p}")));
                }
                dim(n)
            }
            OperatorSpec::PucciMax { gamma, big_gamma, n } => {
                if !(gamma.is_finite() && big_gamma.is_finite() && gamma > 0.0 && gamma <= big_gamma) {
                    return Err(Error::Argument(format!(
                        "Pucci constants need 0 < gamma ≤ Gamma, got {gamma} and {big_gamma}"
                    )));
                }
                dim(n)
            }
            OperatorSpec::InfinityLaplacian | OperatorSpec::GradientLimit => Ok(()),
        }
    }

    /// Dimension, for the dimension-dependent families.
    pub fn dimension(&self) -> Option<usize> {
        match *self {
            OperatorSpec::Laplacian { n }
            | OperatorSpec::PLaplacian { n, .. }
            | OperatorSpec::PucciMax { n, .. } => Some(n),
            _ => None,
        }
    }

    /// True when the operator divides by |∇u|.
    fn gradient_normalized(&self) -> bool {
        match *self {
            OperatorSpec::PLaplacian { p, .. } => p != 2.0,
            OperatorSpec::InfinityLaplacian => true,
            _ => false,
        }
    }
}

/// Normal form v″ + c·v′/r + b·v = 0 with b = λ / coeff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeForm {
    pub c: f64,
    /// λ = coeff·η², and Lφ + λφ = coeff·(φ″ + cφ′/r + bφ) for increasing concave φ.
    pub coeff: f64,
}

impl OdeForm {
    pub fn b(&self, lambda: f64) -> f64 {
        lambda / self.coeff
    }
    pub fn alpha(&self) -> f64 {
        0.5 * (1.0 - self.c)
    }
    pub fn eta(&self, lambda: f64) -> f64 {
        self.b(lambda).sqrt()
    }
    pub fn lambda_for_eta(&self, eta: f64) -> f64 {
        self.coeff * eta * eta
    }
}

pub fn radial_ode_coefficients(op: &OperatorSpec) -> Result<OdeForm> {
    op.validate()?;
    match *op {
        OperatorSpec::Laplacian { n } => Ok(OdeForm { c: (n - 1) as f64, coeff: 1.0 }),
        OperatorSpec::PLaplacian { p, n } => Ok(OdeForm {
            c: (n - 1) as f64 / (p - 1.0),
            coeff: (p - 1.0) / p,
        }),
        OperatorSpec::PucciMax { gamma, big_gamma, n } => Ok(OdeForm {
            c: big_gamma * (n - 1) as f64 / gamma,
            coeff: gamma,
        }),
        OperatorSpec::InfinityLaplacian | OperatorSpec::GradientLimit => Err(Error::Unsupported(
            "this operator has a closed-form profile, not a Bessel normal form".into(),
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileKind {
    Theorem1,
    Theorem2,
    Linear,
    Sine,
}

/// φ(r) = c1·rᵅJ_α(ηr) + c2·rᵅY_α(ηr) on [r_lo, r_hi], or the closed
/// linear and sine profiles. Bessel profiles are scaled so that φ(r_hi) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    pub kind: ProfileKind,
    pub alpha: f64,
    pub eta: f64,
    pub c1: f64,
    pub c2: f64,
    pub r_lo: f64,
    pub r_hi: f64,
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::Argument(format!("{name} must be finite and positive, got {v}")))
    }
}

/// Values of rᵅF_α(ηr) and rᵅF_{α−1}(ηr) for F = J, Y.
struct Pair {
    f: [f64; 2],
    g: [f64; 2],
}

fn bessel_pair(alpha: f64, eta: f64, r: f64) -> Result<Pair> {
    let x = eta * r;
    let v = bessel_jy(alpha, x)?;
    let ra = r.powf(alpha);
    // F_{α−1}(x) = F_α′(x) + (α/x)·F_α(x)
    let jm = v.dj + alpha / x * v.j;
    let ym = v.dy + alpha / x * v.y;
    Ok(Pair { f: [ra * v.j, ra * v.y], g: [ra * jm, ra * ym] })
}

pub fn build_theorem1_profile(op: &OperatorSpec, lambda: f64, r_hi: f64) -> Result<RadialProfile> {
    op.validate()?;
    check_positive("lambda", lambda)?;
    check_positive("r_hi", r_hi)?;
    match *op {
        OperatorSpec::InfinityLaplacian => {
            let eta = lambda.sqrt();
            let limit = PI / (2.0 * eta);
            if r_hi > limit * (1.0 + 1e-12) {
                return Err(Error::Range(format!(
                    "sine profile decreases beyond r = {limit}, requested r_hi = {r_hi}"
                )));
            }
            Ok(RadialProfile { kind: ProfileKind::Sine, alpha: 0.0, eta, c1: 1.0, c2: 0.0, r_lo: 0.0, r_hi })
        }
        OperatorSpec::GradientLimit => Ok(RadialProfile {
            kind: ProfileKind::Linear,
            alpha: 1.0,
            eta: 0.0,
            c1: 1.0,
            c2: 0.0,
            r_lo: 0.0,
            r_hi,
        }),
        _ => {
            let form = radial_ode_coefficients(op)?;
            let alpha = form.alpha();
            if alpha <= 0.0 {
                return Err(Error::Route(format!(
                    "alpha = {alpha} ≤ 0: the Theorem-1 profile is not increasing; use the Theorem-2 route"
                )));
            }
            let eta = form.eta(lambda);
            let first = bessel_zero(BesselOrder::new(alpha - 1.0)?, Family::J, 1)?.value;
            if eta * r_hi > first * (1.0 + 1e-10) {
                return Err(Error::Range(format!(
                    "profile stops increasing at r = {}, requested r_hi = {r_hi}",
                    first / eta
                )));
            }
            let at_hi = bessel_pair(alpha, eta, r_hi)?.f[0];
            Ok(RadialProfile {
                kind: ProfileKind::Theorem1,
                alpha,
                eta,
                c1: 1.0 / at_hi,
                c2: 0.0,
                r_lo: 0.0,
                r_hi,
            })
        }
    }
}

pub fn build_theorem2_profile(
    op: &OperatorSpec,
    lambda: f64,
    delta: f64,
    r_hi: f64,
    family: Family,
) -> Result<RadialProfile> {
    let form = radial_ode_coefficients(op)?;
    check_positive("lambda", lambda)?;
    check_positive("delta", delta)?;
    if !(r_hi.is_finite() && r_hi > delta) {
        return Err(Error::Construction(format!("need r_hi > delta, got {r_hi} ≤ {delta}")));
    }
    let alpha = form.alpha();
    let eta = form.eta(lambda);
    let x = eta * delta;
    let order = BesselOrder::new(alpha)?;
    let nearest = next_zero_after(order, family, x * (1.0 - 1e-8))?.value;
    if (nearest - x).abs() > 1e-8 * x.max(1.0) {
        return Err(Error::Construction(format!(
            "eta·delta = {x} is not a zero of {family}_{alpha} (nearest {nearest})"
        )));
    }
    let y = next_zero_after(BesselOrder::new(alpha - 1.0)?, family, nearest)?.value;
    if eta * r_hi > y * (1.0 + 1e-10) {
        return Err(Error::Construction(format!(
            "eta·r_hi = {} exceeds the next zero {y} of {family}_{}",
            eta * r_hi,
            alpha - 1.0
        )));
    }
    let pair = bessel_pair(alpha, eta, r_hi)?;
    let idx = family_index(family);
    let scale = 1.0 / pair.f[idx];
    let (c1, c2) = if idx == 0 { (scale, 0.0) } else { (0.0, scale) };
    Ok(RadialProfile { kind: ProfileKind::Theorem2, alpha, eta, c1, c2, r_lo: delta, r_hi })
}

fn family_index(f: Family) -> usize {
    match f {
        Family::J => 0,
        Family::Y => 1,
    }
}

/// (φ, φ′, φ″) at r.
pub fn evaluate(profile: &RadialProfile, r: f64) -> Result<(f64, f64, f64)> {
    let slack = 1e-12 * profile.r_hi;
    if !(r > 0.0 && r >= profile.r_lo - slack && r <= profile.r_hi + slack) {
        return Err(Error::Range(format!(
            "r = {r} outside ({}, {}]",
            profile.r_lo, profile.r_hi
        )));
    }
    Ok(match profile.kind {
        ProfileKind::Linear => (profile.c1 * r, profile.c1, 0.0),
        ProfileKind::Sine => {
            let (s, c) = (profile.eta * r).sin_cos();
            let e = profile.eta;
            (profile.c1 * s, profile.c1 * e * c, -profile.c1 * e * e * s)
        }
        ProfileKind::Theorem1 | ProfileKind::Theorem2 => {
            let (a, e) = (profile.alpha, profile.eta);
            let p = bessel_pair(a, e, r)?;
            let phi = profile.c1 * p.f[0] + profile.c2 * p.f[1];
            let g = profile.c1 * p.g[0] + profile.c2 * p.g[1];
            let dphi = e * g;
            let d2phi = e * (2.0 * a - 1.0) * g / r - e * e * phi;
            (phi, dphi, d2phi)
        }
    })
}

/// Radial form of the residual at r (non-positive means supersolution).
pub fn residual(op: &OperatorSpec, profile: &RadialProfile, lambda: f64, r: f64) -> Result<f64> {
    let (phi, dphi, d2phi) = evaluate(profile, r)?;
    if op.gradient_normalized() && dphi.abs() * r <= 1e-13 * (phi.abs() + r * r * d2phi.abs()) {
        return Err(Error::SingularPoint(format!(
            "gradient vanishes at r = {r} for a gradient-normalized operator"
        )));
    }
    let bessel = matches!(profile.kind, ProfileKind::Theorem1 | ProfileKind::Theorem2);
    if bessel {
        if let OperatorSpec::Laplacian { .. } | OperatorSpec::PLaplacian { .. } = op {
            // Bessel profiles obey φ″ = (2α − 1)φ′/r − η²φ exactly; substituting it
            // before summing keeps the r → 0 terms r^{2α−2} from cancelling in rounding
            let form = radial_ode_coefficients(op)?;
            let (a, e) = (profile.alpha, profile.eta);
            // a profile built for this operator has 2α − 1 + c = 0 exactly
            let drift = if form.alpha() == a { 0.0 } else { 2.0 * a - 1.0 + form.c };
            let inner = drift * dphi / r + (form.b(lambda) - e * e) * phi;
            return Ok(form.coeff * inner);
        }
    }
    Ok(match *op {
        OperatorSpec::Laplacian { n } => d2phi + (n - 1) as f64 * dphi / r + lambda * phi,
        OperatorSpec::PLaplacian { p, n } => {
            (p - 1.0) / p * d2phi + (n - 1) as f64 / p * dphi / r + lambda * phi
        }
        OperatorSpec::InfinityLaplacian => d2phi + lambda * phi,
        OperatorSpec::PucciMax { gamma, big_gamma, n } => {
            let weight = |e: f64| if e > 0.0 { big_gamma * e } else { gamma * e };
            weight(d2phi) + (n - 1) as f64 * weight(dphi / r) + lambda * phi
        }
        OperatorSpec::GradientLimit => (dphi * dphi * d2phi).max(lambda * phi - dphi),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub max_residual: f64,
    pub min_slope: f64,
    pub samples: usize,
    pub interval: [f64; 2],
    pub verified: bool,
}

/// Chebyshev points of the first kind on (lo, hi), clipped away from the ends.
pub fn chebyshev_samples(lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let margin = 1e-9 * (hi - lo);
    (0..samples)
        .rev()
        .map(|i| {
            let t = (PI * (2 * i + 1) as f64 / (2 * samples) as f64).cos();
            (mid + half * t).clamp(lo + margin, hi - margin)
        })
        .collect()
}

pub fn verify_supersolution(
    op: &OperatorSpec,
    profile: &RadialProfile,
    lambda: f64,
    samples: usize,
    tol: f64,
) -> Result<ResidualReport> {
    if samples < 2 {
        return Err(Error::Argument("verification needs at least 2 samples".into()));
    }
    let mut max_residual = f64::NEG_INFINITY;
    let mut min_slope = f64::INFINITY;
    for r in chebyshev_samples(profile.r_lo, profile.r_hi, samples) {
        let res = residual(op, profile, lambda, r).unwrap_or(f64::INFINITY);
        let slope = evaluate(profile, r).map_or(f64::NEG_INFINITY, |v| v.1);
        // NaN propagates as a failure
        max_residual = if res.is_nan() || max_residual.is_nan() { f64::NAN } else { max_residual.max(res) };
        min_slope = if slope.is_nan() || min_slope.is_nan() { f64::NAN } else { min_slope.min(slope) };
    }
    Ok(ResidualReport {
        max_residual,
        min_slope,
        samples,
        interval: [profile.r_lo, profile.r_hi],
        verified: max_residual <= tol && min_slope > 0.0,
    })
}

/// Rows (r, φ, φ′, residual) on a uniform interior grid, for plotting.
pub fn profile_table(
    op: &OperatorSpec,
    profile: &RadialProfile,
    lambda: f64,
    samples: usize,
) -> Result<Vec<[f64; 4]>> {
    let (lo, hi) = (profile.r_lo, profile.r_hi);
    let margin = 1e-9 * (hi - lo);
    (0..samples)
        .map(|i| {
            let t = if samples > 1 { i as f64 / (samples - 1) as f64 } else { 0.5 };
            let r = (lo + t * (hi - lo)).clamp(lo + margin, hi - margin);
            let (phi, dphi, _) = evaluate(profile, r)?;
            let res = residual(op, profile, lambda, r).unwrap_or(f64::NAN);
            Ok([r, phi, dphi, res])
        })
        .collect()
}
