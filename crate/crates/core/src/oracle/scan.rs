use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::{cylinder, Family};

/// Brute-force zero finder: walks (0, upto] with a fixed step, bisects every
/// sign change to 1e-10 and returns the midpoints in increasing order.
///
/// Shares only the function evaluator with [`crate::specfun::bessel_zero`],
/// not its phase-based index bookkeeping, so it serves as an independent check.
pub fn bessel_zero_scan(nu: f64, family: Family, upto: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step <= PI / 8.0) {
        return Err(Error::Argument(format!(
            "scan step must lie in (0, pi/8], got {step}"
        )));
    }
    let f = |x: f64| cylinder(nu, family, x);
    let mut zeros = Vec::new();
    // start close to the origin; the leading power behaviour fixes the sign there
    let mut a = 1e-6_f64;
    let mut fa = f(a)?;
    while a < upto {
        let b = if a < step { (a * 2.0).min(step) } else { a + step }.min(upto);
        let fb = f(b)?;
        if fa == 0.0 {
            zeros.push(a);
        } else if fa * fb < 0.0 {
            let (mut lo, mut hi, mut flo) = (a, b, fa);
            while hi - lo > 1e-10 {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid)?;
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if flo * fm < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            zeros.push(0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    Ok(zeros)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sine_and_cosine_orders() {
        let z = bessel_zero_scan(0.5, Family::J, 10.0, 0.01).unwrap();
        assert_eq!(z.len(), 3);
        for (k, v) in z.iter().enumerate() {
            assert!((v - (k + 1) as f64 * PI).abs() < 1e-9);
        }
        let z = bessel_zero_scan(-0.5, Family::J, 10.0, 0.01).unwrap();
        assert_eq!(z.len(), 3);
        for (k, v) in z.iter().enumerate() {
            assert!((v - (k as f64 + 0.5) * PI).abs() < 1e-9);
        }
    }

    #[test]
    fn order_zero_against_mcmahon() {
        let z = bessel_zero_scan(0.0, Family::J, 10.0, 0.01).unwrap();
        assert_eq!(z.len(), 3);
        let expected = [2.404826, 5.520078, 8.653728];
        for (v, e) in z.iter().zip(expected) {
            assert!((v - e).abs() < 1e-6);
        }
        // McMahon, three terms: β + 1/(8β) − 124/(3(8β)³) with β = (k − 1/4)π;
        // the expansion is asymptotic in k, so the first zero gets a looser check
        for (k, v) in z.iter().enumerate() {
            let beta = (k as f64 + 0.75) * PI;
            let m = beta + 1.0 / (8.0 * beta) - 124.0 / (3.0 * (8.0 * beta).powi(3));
            let tol = if k == 0 { 5e-3 } else { 1e-3 };
            assert!((v - m).abs() < tol, "k={} {v} vs {m}", k + 1);
        }
    }

    #[test]
    fn rejects_coarse_step() {
        assert!(bessel_zero_scan(0.0, Family::J, 10.0, 1.0).is_err());
    }
}
