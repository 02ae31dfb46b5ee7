use crate::error::{Error, Result};
use crate::radial::{radial_ode_coefficients, OperatorSpec};
use crate::specfun::{bessel_zero, BesselOrder, Family};

/// Start radius relative to R.
const START: f64 = 1e-6;
const MAX_BISECTIONS: usize = 200;

/// Principal eigenvalue of the ball B_R for an operator with a Bessel normal
/// form, found by shooting the radial ODE from the centre and bisecting λ
/// until the first zero of the solution sits at R.
///
/// The ODE is integrated in s = ln r with fixed-step RK4, where it reads
/// v_s = w, w_s = (1 − c)w − b e^{2s} v for w = r v′, so the regular singular
/// point at the origin costs nothing.
pub fn radial_shoot_ball_lambda1(op: &OperatorSpec, radius: f64, tol: f64) -> Result<f64> {
    let form = radial_ode_coefficients(op)?;
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::Argument(format!("radius must be finite and positive, got {radius}")));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Argument(format!("tol must be finite and positive, got {tol}")));
    }
    let c = form.c;
    let order = -form.alpha();
    let mu = match BesselOrder::new(order).and_then(|o| bessel_zero(o, Family::J, 1)) {
        Ok(z) => z.value,
        // large orders: leading asymptotic of the first zero
        Err(_) => order + 1.855_757 * order.cbrt(),
    };
    let guess = form.lambda_for_eta(mu / radius);

    let eps = START * radius;
    let span = (radius / eps).ln();
    let steps = ((span / 1e-3) as usize).max((span * (1.0 - c).abs() * 20.0) as usize);
    let ds = span / steps as f64;
    // e^{2s} at the step and half-step abscissae
    let growth: Vec<f64> = (0..=2 * steps).map(|i| (2.0 * (eps.ln() + 0.5 * ds * i as f64)).exp()).collect();
    // true when the solution started with b = λ/coeff changes sign before R
    let crosses = |lambda: f64| -> bool {
        let b = form.b(lambda);
        let a = -b / (2.0 * (1.0 + c));
        let mut v = 1.0 + a * eps * eps;
        let mut w = 2.0 * a * eps * eps;
        let f = |g: f64, v: f64, w: f64| (w, (1.0 - c) * w - b * g * v);
        for i in 0..steps {
            let (g0, g1, g2) = (growth[2 * i], growth[2 * i + 1], growth[2 * i + 2]);
            let (k1v, k1w) = f(g0, v, w);
            let (k2v, k2w) = f(g1, v + 0.5 * ds * k1v, w + 0.5 * ds * k1w);
            let (k3v, k3w) = f(g1, v + 0.5 * ds * k2v, w + 0.5 * ds * k2w);
            let (k4v, k4w) = f(g2, v + ds * k3v, w + ds * k3w);
            v += ds / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            w += ds / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
            if v <= 0.0 {
                return true;
            }
        }
        false
    };

    let (mut lo, mut hi) = (0.25 * guess, 4.0 * guess);
    if crosses(lo) || !crosses(hi) {
        lo = guess / 64.0;
        hi = guess * 64.0;
        if crosses(lo) || !crosses(hi) {
            return Err(Error::Numeric(format!(
                "no sign change of the shooting residual in [{lo}, {hi}]"
            )));
        }
    }
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= tol * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if crosses(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
