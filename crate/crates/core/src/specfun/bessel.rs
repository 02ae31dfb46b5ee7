//! Bessel functions of the first and second kind for real order.
//!
//! Non-negative orders are evaluated with Temme's series (x < 2) or Steed's
//! continued fractions (2 ≤ x), both anchored by a forward/backward
//! recurrence to the fractional part of the order. Large arguments switch to
//! the Hankel asymptotic expansion. Negative orders use the reflection
//!
//! ```text
//! J_{-μ} = cos(μπ) J_μ − sin(μπ) Y_μ
//! Y_{-μ} = sin(μπ) J_μ + cos(μπ) Y_μ
//! ```
//!
//! which stays exact for integer μ because `sin_cos_pi` reduces the order
//! before calling into libm.

use std::f64::consts::{FRAC_2_PI, PI};

use crate::error::{Error, Result};

/// Largest supported |ν|.
pub const MAX_ORDER: f64 = 50.0;

const EPS: f64 = f64::EPSILON;
const FPMIN: f64 = f64::MIN_POSITIVE / f64::EPSILON;
const TEMME_XMIN: f64 = 2.0;
const MAX_ITER: usize = 1_000_000;

/// Taylor coefficients of 1/Γ(z) about z = 0, starting at z¹.
const RGAMMA_TAYLOR: [f64; 30] = [
    1.0,
    0.577_215_664_901_532_860_606_5,
    -0.655_878_071_520_253_881_077,
    -0.042_002_635_034_095_235_529,
    0.166_538_611_382_291_489_501_7,
    -0.042_197_734_555_544_336_748_21,
    -0.009_621_971_527_876_973_562_115,
    0.007_218_943_246_663_099_542_395,
    -0.001_165_167_591_859_065_112_114,
    -0.000_215_241_674_114_950_972_815_7,
    0.000_128_050_282_388_116_186_153_2,
    -0.000_020_134_854_780_788_238_655_69,
    -0.000_001_250_493_482_142_670_657_345,
    0.000_001_133_027_231_981_695_882_374,
    -2.056_338_416_977_607_103_45e-7,
    6.116_095_104_481_415_817_862e-9,
    5.002_007_644_469_222_930_056e-9,
    -1.181_274_570_487_020_144_588e-9,
    1.043_426_711_691_100_510_492e-10,
    7.782_263_439_905_071_254_05e-12,
    -3.696_805_618_642_205_708_188e-12,
    5.100_370_287_454_475_979_015e-13,
    -2.058_326_053_566_506_783_222e-14,
    -5.348_122_539_423_017_982_37e-15,
    1.226_778_628_238_260_790_159e-15,
    -1.181_259_301_697_458_769_514e-16,
    1.186_692_254_751_600_332_58e-18,
    1.412_380_655_318_031_781_556e-18,
    -2.298_745_684_435_370_206_592e-19,
    1.714_406_321_927_337_433_384e-20,
];

/// J_ν, Y_ν and their x-derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselValues {
    pub j: f64,
    pub y: f64,
    pub dj: f64,
    pub dy: f64,
}

/// Bessel function of the first kind J_ν(x).
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_jy(nu, x)?.j)
}

/// Bessel function of the second kind Y_ν(x).
pub fn bessel_y(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_jy(nu, x)?.y)
}

/// Evaluates J_ν, Y_ν, J_ν′ and Y_ν′ at `x > 0` for any real |ν| ≤ 50.
pub fn bessel_jy(nu: f64, x: f64) -> Result<BesselValues> {
    check_order(nu)?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "Bessel functions require a finite positive argument, got x = {x}"
        )));
    }
    let values = if x >= asymptotic_threshold(nu) {
        hankel_values(nu, x)
    } else if nu >= 0.0 {
        steed_temme(nu, x)?
    } else {
        let mu = -nu;
        let pos = steed_temme(mu, x)?;
        let (s, c) = sin_cos_pi(mu);
        BesselValues {
            j: c * pos.j - s * pos.y,
            y: s * pos.j + c * pos.y,
            dj: c * pos.dj - s * pos.dy,
            dy: s * pos.dj + c * pos.dy,
        }
    };
    if !(values.j.is_finite() && values.y.is_finite()) {
        return Err(Error::Numeric(format!(
            "Bessel evaluation overflowed at nu = {nu}, x = {x}"
        )));
    }
    Ok(values)
}

pub(crate) fn check_order(nu: f64) -> Result<()> {
    if !nu.is_finite() || nu.abs() > MAX_ORDER {
        return Err(Error::Argument(format!(
            "Bessel order must be finite with |nu| <= {MAX_ORDER}, got {nu}"
        )));
    }
    Ok(())
}

/// Argument above which the Hankel expansion is accurate to working precision.
pub(crate) fn asymptotic_threshold(nu: f64) -> f64 {
    let m = nu.abs() + 1.0;
    30.0 + m * m
}

/// Returns (sin(πt), cos(πt)) with exact zeros at integers and half-integers.
pub(crate) fn sin_cos_pi(t: f64) -> (f64, f64) {
    let r = t - 2.0 * (t / 2.0).round();
    // r in [-1, 1]
    if r == 0.0 {
        return (0.0, 1.0);
    }
    if r.abs() == 1.0 {
        return (0.0, -1.0);
    }
    if r == 0.5 {
        return (1.0, 0.0);
    }
    if r == -0.5 {
        return (-1.0, 0.0);
    }
    let a = PI * r;
    (a.sin(), a.cos())
}

/// Hankel's asymptotic series: returns (P, Q) with
/// J = √(2/πx)(P cos χ − Q sin χ), Y = √(2/πx)(P sin χ + Q cos χ),
/// χ = x − (ν/2 + 1/4)π.
pub(crate) fn hankel_pq(nu: f64, x: f64) -> (f64, f64) {
    let m = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0_f64;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (m - odd * odd) / (k as f64 * 8.0 * x);
        let size = term.abs();
        if size == 0.0 || size > prev {
            break;
        }
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if size < 1e-18 * (p.abs() + q.abs()) {
            break;
        }
        prev = size;
    }
    (p, q)
}

fn hankel_jy(nu: f64, x: f64) -> (f64, f64) {
    let (p, q) = hankel_pq(nu, x);
    let (sp, cp) = sin_cos_pi(nu / 2.0 + 0.25);
    let (sx, cx) = x.sin_cos();
    // cos χ and sin χ with χ = x − φ, expanded to keep the reduction of x exact
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    let amp = (FRAC_2_PI / x).sqrt();
    (
        amp * (p * cos_chi - q * sin_chi),
        amp * (p * sin_chi + q * cos_chi),
    )
}

fn hankel_values(nu: f64, x: f64) -> BesselValues {
    let (j, y) = hankel_jy(nu, x);
    let (jm, ym) = hankel_jy(nu - 1.0, x);
    BesselValues {
        j,
        y,
        dj: jm - nu / x * j,
        dy: ym - nu / x * y,
    }
}

/// Temme/Steed evaluation for ν ≥ 0.
fn steed_temme(nu: f64, x: f64) -> Result<BesselValues> {
    debug_assert!(nu >= 0.0 && x > 0.0);
    let nl = if x < TEMME_XMIN {
        (nu + 0.5) as usize
    } else {
        (nu - x + 1.5).max(0.0) as usize
    };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: J'_ν / J_ν by the modified Lentz method.
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAX_ITER {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() <= EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numeric(format!(
            "continued fraction for J'/J did not converge at nu = {nu}, x = {x}"
        )));
    }

    // Downward recurrence to the reduced order xmu.
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, mut rymu, mut ry1);
    if x < TEMME_XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2) = temme_gammas(xmu);
        let gampl = gam2 - xmu * gam1;
        let gammi = gam2 + xmu * gam1;
        let mut ff = FRAC_2_PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS {
            1.0
        } else {
            pimu2.sin() / pimu2
        };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut converged = false;
        for i in 1..MAX_ITER {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Numeric(format!(
                "Temme series did not converge at nu = {nu}, x = {x}"
            )));
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // CF2: p + iq by complex Lentz.
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut converged = false;
        for i in 1..MAX_ITER {
            a += 2.0 * i as f64;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() <= EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Numeric(format!(
                "continued fraction for Y did not converge at nu = {nu}, x = {x}"
            )));
        }
        let gam = (p - f) / q;
        let mag = (w / ((p - f) * gam + q)).sqrt();
        rjmu = mag.copysign(rjl);
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }

    let scale = rjmu / rjl;
    let j = rjl1 * scale;
    let dj = rjp1 * scale;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    let y = rymu;
    let dy = nu * xi * rymu - ry1;
    Ok(BesselValues { j, y, dj, dy })
}

/// Temme's Γ1(μ), Γ2(μ) for |μ| ≤ 1/2:
/// Γ1 = (1/Γ(1−μ) − 1/Γ(1+μ)) / 2μ, Γ2 = (1/Γ(1−μ) + 1/Γ(1+μ)) / 2.
fn temme_gammas(mu: f64) -> (f64, f64) {
    // 1/Γ(1+μ) = Σ c_k μ^{k−1}; odd k feed Γ2, even k feed −Γ1.
    let mu2 = mu * mu;
    let mut gam1 = 0.0;
    let mut gam2 = 0.0;
    for i in (0..RGAMMA_TAYLOR.len()).rev() {
        if i % 2 == 0 {
            gam2 = gam2 * mu2 + RGAMMA_TAYLOR[i];
        } else {
            gam1 = gam1 * mu2 + RGAMMA_TAYLOR[i];
        }
    }
    (-gam1, gam2)
}
