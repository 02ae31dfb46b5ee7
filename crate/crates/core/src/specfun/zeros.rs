//! Positive zeros of J_ν and Y_ν.
//!
//! Zeros are located through the Bessel phase θ_μ(x), μ = |ν|, defined by
//! J_μ = M cos θ_μ, Y_μ = M sin θ_μ with θ_μ(0⁺) = −π/2. The phase is
//! strictly increasing, so the k-th zero of either family is the unique root
//! of θ_μ(x) = T_k for an explicitly known target T_k; negative orders shift
//! every target by μπ through the reflection formulas. Below the Hankel
//! threshold the phase is unwrapped along a precomputed grid; above it the
//! phase is available in closed form from the asymptotic P and Q series.
//!
//! Each zero is refined by a safeguarded Newton iteration started from
//! McMahon's expansion, then certified by a sign change of the function itself
//! across a bracket of relative width at most 1e-12.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::bessel::{asymptotic_threshold, bessel_jy, check_order, hankel_pq};
use crate::error::{Error, Result};

/// Largest zero index served.
pub const MAX_ZERO_INDEX: usize = 10_000;

const TABLE_START: f64 = 1e-3;
const TINY_ZERO_FLOOR: f64 = 1e-12;
const BRACKET_REL: f64 = 4e-13;

/// Which cylinder function the zeros belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    J,
    Y,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::J => write!(f, "J"),
            Family::Y => write!(f, "Y"),
        }
    }
}

/// A validated Bessel order, |ν| ≤ 50.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        check_order(nu)?;
        Ok(Self(nu))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A zero together with a bracket across which the function changes sign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselZero {
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
}

impl BesselZero {
    pub fn bracket_width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// The first few zeros of one function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroTable {
    pub order: BesselOrder,
    pub family: Family,
    pub zeros: Vec<BesselZero>,
}

impl ZeroTable {
    pub fn new(order: BesselOrder, family: Family, count: usize) -> Result<Self> {
        let zeros = (1..=count)
            .map(|k| bessel_zero(order, family, k))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            order,
            family,
            zeros,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        self.zeros.iter().map(|z| z.value).collect()
    }
}

/// Evaluates J_ν(x) or Y_ν(x).
pub fn cylinder(nu: f64, family: Family, x: f64) -> Result<f64> {
    let v = bessel_jy(nu, x)?;
    Ok(match family {
        Family::J => v.j,
        Family::Y => v.y,
    })
}

/// The k-th positive zero (k ≥ 1) of J_ν or Y_ν.
pub fn bessel_zero(order: BesselOrder, family: Family, k: usize) -> Result<BesselZero> {
    if k == 0 || k > MAX_ZERO_INDEX {
        return Err(Error::Argument(format!(
            "zero index must lie in 1..={MAX_ZERO_INDEX}, got {k}"
        )));
    }
    let nu = order.value();
    let target = phase_target(nu, family, k);
    let x = solve_phase(nu.abs(), target)?;
    certify(nu, family, x)
}

/// The smallest zero of J_ν or Y_ν strictly greater than `x`.
pub fn next_zero_after(order: BesselOrder, family: Family, x: f64) -> Result<BesselZero> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Argument(format!(
            "next_zero_after needs a finite positive abscissa, got {x}"
        )));
    }
    let nu = order.value();
    let mu = nu.abs();
    let theta = if x <= TABLE_START {
        raw_phase(mu, x)?
    } else {
        phase(mu, x)?
    };
    let first = phase_target(nu, family, 1);
    let mut k = if theta < first {
        1
    } else {
        ((theta - first) / PI).floor() as usize + 2
    };
    // step back once in case rounding put θ(x) just past a target
    if k > 1 {
        k -= 1;
    }
    loop {
        if k > MAX_ZERO_INDEX {
            return Err(Error::Argument(format!(
                "no zero below index {MAX_ZERO_INDEX} after x = {x}"
            )));
        }
        let z = bessel_zero(order, family, k)?;
        if z.value > x * (1.0 + 4.0 * f64::EPSILON) {
            return Ok(z);
        }
        k += 1;
    }
}

/// Phase value (in θ_|ν| units) at which the k-th zero sits.
fn phase_target(nu: f64, family: Family, k: usize) -> f64 {
    // for ν < 0 the reflected phase is θ_μ + μπ; its range starts at −π/2 + μπ
    let shift = if nu < 0.0 { -nu } else { 0.0 };
    let first_m = match family {
        Family::J => shift.floor(),
        Family::Y => (shift - 0.5).floor() + 1.0,
    };
    let base = match family {
        Family::J => FRAC_PI_2,
        Family::Y => 0.0,
    };
    base + (first_m + (k - 1) as f64) * PI - shift * PI
}

/// Closed-form phase above the Hankel threshold: θ = χ + atan2(Q, P).
fn asymptotic_phase(mu: f64, x: f64) -> f64 {
    let (p, q) = hankel_pq(mu, x);
    x - (mu / 2.0 + 0.25) * PI + q.atan2(p)
}

fn asymptotic_phase_slope(mu: f64, x: f64) -> f64 {
    let (p, q) = hankel_pq(mu, x);
    1.0 / (p * p + q * q)
}

/// atan2(Y_μ, J_μ), the phase reduced to (−π, π].
fn wrapped_phase(mu: f64, x: f64) -> Result<(f64, f64)> {
    let v = bessel_jy(mu, x)?;
    let m2 = v.j * v.j + v.y * v.y;
    Ok((v.y.atan2(v.j), 2.0 / (PI * x * m2)))
}

/// Phase for x ≤ TABLE_START, where θ_μ ∈ (−π/2, 0) needs no unwrapping.
fn raw_phase(mu: f64, x: f64) -> Result<f64> {
    Ok(wrapped_phase(mu, x)?.0)
}

/// Unwrapped phase grid from TABLE_START up to the Hankel threshold.
#[derive(Debug)]
struct PhaseTable {
    xs: Vec<f64>,
    thetas: Vec<f64>,
}

impl PhaseTable {
    fn build(mu: f64) -> Result<Self> {
        let x_end = asymptotic_threshold(mu);
        let mut xs = vec![TABLE_START];
        let theta0 = raw_phase(mu, TABLE_START)?;
        if !(theta0 > -FRAC_PI_2 - 1e-12 && theta0 < 0.0) {
            return Err(Error::Numeric(format!(
                "phase at table start out of range for order {mu}: {theta0}"
            )));
        }
        let mut thetas = vec![theta0];
        let mut x = TABLE_START;
        let mut wrapped = theta0;
        let mut theta = theta0;
        while x < x_end {
            let step = if x < 1.0 { 0.25 * x } else { 0.5 };
            let next = (x + step).min(x_end);
            let w = if next == x_end {
                // land exactly on the closed-form branch
                let t = asymptotic_phase(mu, next);
                let inc = t - theta;
                if !(0.0..1.5).contains(&inc) {
                    return Err(Error::Numeric(format!(
                        "phase continuation mismatch for order {mu}: increment {inc}"
                    )));
                }
                theta = t;
                t
            } else {
                let (w, _) = wrapped_phase(mu, next)?;
                let inc = (w - wrapped).rem_euclid(2.0 * PI);
                if inc > 1.5 {
                    return Err(Error::Numeric(format!(
                        "phase step too coarse for order {mu} at x = {next}"
                    )));
                }
                theta += inc;
                w
            };
            wrapped = w;
            x = next;
            xs.push(x);
            thetas.push(theta);
        }
        Ok(Self { xs, thetas })
    }

    fn end(&self) -> f64 {
        *self.xs.last().expect("table is never empty")
    }

    fn phase(&self, mu: f64, x: f64) -> Result<(f64, f64)> {
        let i = match self.xs.binary_search_by(|p| p.total_cmp(&x)) {
            Ok(i) => i.min(self.xs.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.xs.len() - 2),
        };
        let mid = 0.5 * (self.thetas[i] + self.thetas[i + 1]);
        let (w, slope) = wrapped_phase(mu, x)?;
        let turns = ((mid - w) / (2.0 * PI)).round();
        Ok((w + 2.0 * PI * turns, slope))
    }
}

fn table_for(mu: f64) -> Result<Arc<PhaseTable>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<PhaseTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("phase cache poisoned").get(&mu.to_bits()) {
        return Ok(Arc::clone(t));
    }
    let table = Arc::new(PhaseTable::build(mu)?);
    cache
        .lock()
        .expect("phase cache poisoned")
        .entry(mu.to_bits())
        .or_insert_with(|| Arc::clone(&table));
    Ok(table)
}

/// Unwrapped phase θ_μ(x) for x ≥ TABLE_START, with its derivative.
fn phase_and_slope(mu: f64, x: f64) -> Result<(f64, f64)> {
    if x >= asymptotic_threshold(mu) {
        return Ok((asymptotic_phase(mu, x), asymptotic_phase_slope(mu, x)));
    }
    table_for(mu)?.phase(mu, x)
}

fn phase(mu: f64, x: f64) -> Result<f64> {
    Ok(phase_and_slope(mu, x)?.0)
}

/// Solves θ_μ(x) = target.
fn solve_phase(mu: f64, target: f64) -> Result<f64> {
    let table = table_for(mu)?;
    if target < table.thetas[0] {
        return solve_tiny(mu, target);
    }
    let end = table.end();
    let (mut lo, mut hi) = if target <= *table.thetas.last().unwrap() {
        let i = table.thetas.partition_point(|&t| t < target);
        let i = i.max(1);
        (table.xs[i - 1], table.xs[i])
    } else {
        // McMahon: x ≈ β − (4μ² − 1)/(8β), β = target + (μ/2 + 1/4)π
        let beta = target + (mu / 2.0 + 0.25) * PI;
        let guess = (beta - (4.0 * mu * mu - 1.0) / (8.0 * beta)).max(end);
        let mut lo = (guess - 1.0).max(end);
        let mut hi = guess + 1.0;
        while asymptotic_phase(mu, lo) > target {
            lo = (lo - 2.0).max(end);
        }
        while asymptotic_phase(mu, hi) < target {
            hi += 2.0;
        }
        (lo, hi)
    };
    let mut x = 0.5 * (lo + hi);
    if target > *table.thetas.last().unwrap() {
        let beta = target + (mu / 2.0 + 0.25) * PI;
        x = (beta - (4.0 * mu * mu - 1.0) / (8.0 * beta)).clamp(lo, hi);
    }
    for _ in 0..200 {
        let (theta, slope) = phase_and_slope(mu, x)?;
        let g = theta - target;
        if g == 0.0 {
            return Ok(x);
        }
        if g < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - g / slope;
        let next = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 2.0 * f64::EPSILON * x || hi - lo <= 2.0 * f64::EPSILON * hi {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::Numeric(format!(
        "phase inversion did not converge for order {mu}, target {target}"
    )))
}

/// Zeros below the table start; only reachable for orders just above a
/// negative integer, where the first zero tends to 0.
fn solve_tiny(mu: f64, target: f64) -> Result<f64> {
    let mut lo = TINY_ZERO_FLOOR;
    let mut hi = TABLE_START;
    if raw_phase(mu, lo)? > target {
        return Err(Error::Numeric(format!(
            "zero of order {mu} lies below {TINY_ZERO_FLOOR}"
        )));
    }
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        if raw_phase(mu, mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 2.0 * f64::EPSILON * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Wraps an approximate zero in a verified sign-change bracket.
fn certify(nu: f64, family: Family, x: f64) -> Result<BesselZero> {
    let mut half = BRACKET_REL * x;
    for _ in 0..12 {
        let lo = x - half;
        let hi = x + half;
        let flo = cylinder(nu, family, lo)?;
        let fhi = cylinder(nu, family, hi)?;
        if flo * fhi < 0.0 {
            return Ok(BesselZero { value: x, lo, hi });
        }
        half *= 0.5;
        if half < 2.0 * f64::EPSILON * x {
            break;
        }
    }
    Err(Error::Numeric(format!(
        "could not certify sign change of {family}_{nu} near {x}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(nu: f64) -> BesselOrder {
        BesselOrder::new(nu).unwrap()
    }

    #[test]
    fn half_order_zeros_are_multiples_of_pi() {
        for k in 1..=5 {
            let z = bessel_zero(order(0.5), Family::J, k).unwrap();
            assert!((z.value - k as f64 * PI).abs() < 1e-12 * k as f64);
            let z = bessel_zero(order(-0.5), Family::J, k).unwrap();
            assert!((z.value - (k as f64 - 0.5) * PI).abs() < 1e-12 * k as f64);
        }
    }

    #[test]
    fn bracket_is_tight_and_signed() {
        for &nu in &[-1.7, -0.5, 0.0, 0.3, 3.0] {
            for family in [Family::J, Family::Y] {
                for k in [1, 2, 10, 64] {
                    let z = bessel_zero(order(nu), family, k).unwrap();
                    assert!(z.bracket_width() <= 1e-12 * z.value.max(1.0));
                    let a = cylinder(nu, family, z.lo).unwrap();
                    let b = cylinder(nu, family, z.hi).unwrap();
                    assert!(a * b < 0.0);
                }
            }
        }
    }

    #[test]
    fn index_limits() {
        assert!(matches!(
            bessel_zero(order(0.0), Family::J, 0),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            bessel_zero(order(0.0), Family::J, MAX_ZERO_INDEX + 1),
            Err(Error::Argument(_))
        ));
        let z = bessel_zero(order(0.0), Family::J, MAX_ZERO_INDEX).unwrap();
        // McMahon leading term
        let beta = (MAX_ZERO_INDEX as f64 - 0.25) * PI;
        assert!((z.value - beta).abs() < 1e-4);
    }

    #[test]
    fn next_zero_examples() {
        let z = next_zero_after(order(0.5), Family::J, PI).unwrap();
        assert!((z.value - 2.0 * PI).abs() < 1e-12);
        let z = next_zero_after(order(-0.5), Family::J, FRAC_PI_2).unwrap();
        assert!((z.value - 1.5 * PI).abs() < 1e-12);
        let z = next_zero_after(order(0.5), Family::J, 0.1).unwrap();
        assert!((z.value - PI).abs() < 1e-12);
    }

    #[test]
    fn near_negative_integer_has_small_first_zero() {
        // J_ν with ν slightly above −1 vanishes close to the origin
        let z = bessel_zero(order(-0.999), Family::J, 1).unwrap();
        assert!(z.value < 0.1);
        let f = cylinder(-0.999, Family::J, z.value * 0.5).unwrap();
        assert!(f > 0.0);
    }
}
