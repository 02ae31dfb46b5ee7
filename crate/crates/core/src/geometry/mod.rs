//! Inradius, dilated inradius, volume, convexity and distances for the
//! supported domain shapes.

mod lp;
mod plane;
mod region;

use std::collections::HashMap;
use std::f64::consts::{PI, SQRT_2};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use plane::{boundary_distance, point_in_polygon, polygon_is_convex, signed_area, validate_polygon, P2};
use region::Region;

/// Relative target (to the bounding-box diameter) of the certified gap in the
/// nonconvex inscribed-disk search, and its evaluation budget.
pub const SEARCH_TARGET: f64 = 1e-9;
pub const SEARCH_BUDGET: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
pub enum Shape {
    /// Ball of the given radius centred at the origin.
    Ball { radius: f64 },
    /// Box [0, s₁] × … × [0, sₙ].
    Box { sides: Vec<f64> },
    /// Points within `radius` of the segment from (−length/2, 0) to (length/2, 0).
    Stadium { length: f64, radius: f64 },
    /// Simple polygon, vertices counterclockwise.
    Polygon { vertices: Vec<[f64; 2]> },
    /// [0, leg]² with min(x, y) ≤ width.
    LShape { leg: f64, width: f64 },
    /// [0, side]² minus a centred slot of the given width cut down from the top edge.
    UShape { side: f64, slot_width: f64, slot_depth: f64 },
    /// {x² + y² < radius², 0 < z < height}.
    Cylinder { radius: f64, height: f64 },
}

/// A validated domain. Clones share the dilated-inradius cache.
#[derive(Debug, Clone)]
pub struct DomainSpec {
    dimension: usize,
    shape: Shape,
    outline: Option<Vec<P2>>,
    cache: Arc<Mutex<HashMap<u64, Measured>>>,
}

impl PartialEq for DomainSpec {
    fn eq(&self, other: &Self) -> bool {
        self.dimension == other.dimension && self.shape == other.shape
    }
}

/// A length together with the certified resolution of the search that
/// produced it, when it came from the numerical path. The true value lies in
/// [value, value + resolution].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Measured {
    pub value: f64,
    pub resolution: Option<f64>,
}

impl Measured {
    fn exact(value: f64) -> Self {
        Measured { value, resolution: None }
    }
    /// value + resolution
    pub fn upper(&self) -> f64 {
        self.value + self.resolution.unwrap_or(0.0)
    }
    /// value − resolution
    pub fn lower(&self) -> f64 {
        self.value - self.resolution.unwrap_or(0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometrySummary {
    pub inradius: f64,
    pub volume: f64,
    pub convex: bool,
    /// Certified resolution when the inradius came from the numerical search.
    pub resolution: Option<f64>,
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::Geometry(format!("{name} must be finite and positive, got {v}")))
    }
}

impl DomainSpec {
    /// Validates the shape. `dimension` is required for balls and must match
    /// the intrinsic dimension of every other shape when given.
    pub fn new(shape: Shape, dimension: Option<usize>) -> Result<Self> {
        let intrinsic = match &shape {
            Shape::Ball { radius } => {
                positive("ball radius", *radius)?;
                None
            }
            Shape::Box { sides } => {
                if sides.is_empty() {
                    return Err(Error::Geometry("box needs at least one side".into()));
                }
                for s in sides {
                    positive("box side", *s)?;
                }
                Some(sides.len())
            }
            Shape::Stadium { length, radius } => {
                positive("stadium length", *length)?;
                positive("stadium radius", *radius)?;
                Some(2)
            }
            Shape::Polygon { .. } => Some(2),
            Shape::LShape { leg, width } => {
                positive("leg", *leg)?;
                positive("width", *width)?;
                if leg < width {
                    return Err(Error::Geometry(format!(
                        "L-shape needs leg ≥ width, got leg {leg} and width {width}"
                    )));
                }
                Some(2)
            }
            Shape::UShape { side, slot_width, slot_depth } => {
                positive("side", *side)?;
                positive("slot width", *slot_width)?;
                positive("slot depth", *slot_depth)?;
                if slot_width >= side || slot_depth >= side {
                    return Err(Error::Geometry(
                        "U-shape slot must be narrower and shallower than the side".into(),
                    ));
                }
                Some(2)
            }
            Shape::Cylinder { radius, height } => {
                positive("cylinder radius", *radius)?;
                positive("cylinder height", *height)?;
                Some(3)
            }
        };
        let dimension = match (intrinsic, dimension) {
            (Some(d), None) => d,
            (Some(d), Some(g)) if d == g => d,
            (Some(d), Some(g)) => {
                return Err(Error::Geometry(format!(
                    "shape has dimension {d} but dimension {g} was requested"
                )))
            }
            (None, Some(g)) if g >= 1 => g,
            (None, _) => return Err(Error::Geometry("ball needs a dimension ≥ 1".into())),
        };
        let outline = match &shape {
            Shape::Polygon { vertices } => Some(validate_polygon(vertices)?),
            Shape::LShape { leg, width } => Some(
                [[0.0, 0.0], [*leg, 0.0], [*leg, *width], [*width, *width], [*width, *leg], [0.0, *leg]]
                    .map(|v| P2::new(v[0], v[1]))
                    .to_vec(),
            ),
            Shape::UShape { side, slot_width, slot_depth } => {
                let a = 0.5 * (side - slot_width);
                let b = 0.5 * (side + slot_width);
                let f = side - slot_depth;
                Some(
                    [[0.0, 0.0], [*side, 0.0], [*side, *side], [b, *side], [b, f], [a, f], [a, *side], [0.0, *side]]
                        .map(|v| P2::new(v[0], v[1]))
                        .to_vec(),
                )
            }
            Shape::Box { sides } if sides.len() == 2 => Some(vec![
                P2::new(0.0, 0.0),
                P2::new(sides[0], 0.0),
                P2::new(sides[0], sides[1]),
                P2::new(0.0, sides[1]),
            ]),
            _ => None,
        };
        Ok(DomainSpec { dimension, shape, outline, cache: Arc::default() })
    }

    pub fn ball(dimension: usize, radius: f64) -> Result<Self> {
        Self::new(Shape::Ball { radius }, Some(dimension))
    }
    pub fn rectangle(sides: &[f64]) -> Result<Self> {
        Self::new(Shape::Box { sides: sides.to_vec() }, None)
    }
    pub fn polygon(vertices: &[[f64; 2]]) -> Result<Self> {
        Self::new(Shape::Polygon { vertices: vertices.to_vec() }, None)
    }
    pub fn l_shape(leg: f64, width: f64) -> Result<Self> {
        Self::new(Shape::LShape { leg, width }, None)
    }
    pub fn u_shape(side: f64, slot_width: f64, slot_depth: f64) -> Result<Self> {
        Self::new(Shape::UShape { side, slot_width, slot_depth }, None)
    }
    pub fn cylinder(radius: f64, height: f64) -> Result<Self> {
        Self::new(Shape::Cylinder { radius, height }, None)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }
    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Copy of the domain scaled by `s` about the origin.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        positive("scale", s)?;
        let shape = match &self.shape {
            Shape::Ball { radius } => Shape::Ball { radius: radius * s },
            Shape::Box { sides } => Shape::Box { sides: sides.iter().map(|v| v * s).collect() },
            Shape::Stadium { length, radius } => Shape::Stadium { length: length * s, radius: radius * s },
            Shape::Polygon { vertices } => Shape::Polygon {
                vertices: vertices.iter().map(|v| [v[0] * s, v[1] * s]).collect(),
            },
            Shape::LShape { leg, width } => Shape::LShape { leg: leg * s, width: width * s },
            Shape::UShape { side, slot_width, slot_depth } => Shape::UShape {
                side: side * s,
                slot_width: slot_width * s,
                slot_depth: slot_depth * s,
            },
            Shape::Cylinder { radius, height } => Shape::Cylinder { radius: radius * s, height: height * s },
        };
        Self::new(shape, Some(self.dimension))
    }
}

/// Volume of the unit ball in dimension n.
pub fn unit_ball_volume(n: usize) -> f64 {
    let (mut even, mut odd) = (1.0, 2.0);
    for k in 2..=n {
        if k % 2 == 0 {
            even *= 2.0 * PI / k as f64;
        } else {
            odd *= 2.0 * PI / k as f64;
        }
    }
    if n % 2 == 0 {
        even
    } else {
        odd
    }
}

pub fn is_convex(domain: &DomainSpec) -> bool {
    match &domain.shape {
        Shape::Ball { .. } | Shape::Box { .. } | Shape::Stadium { .. } | Shape::Cylinder { .. } => true,
        Shape::LShape { leg, width } => leg == width,
        Shape::UShape { .. } => false,
        Shape::Polygon { .. } => polygon_is_convex(outline(domain)),
    }
}

fn outline(domain: &DomainSpec) -> &[P2] {
    domain.outline.as_deref().expect("planar polygonal domain carries an outline")
}

pub fn volume(domain: &DomainSpec) -> f64 {
    match &domain.shape {
        Shape::Ball { radius } => unit_ball_volume(domain.dimension) * radius.powi(domain.dimension as i32),
        Shape::Box { sides } => sides.iter().product(),
        Shape::Stadium { length, radius } => 2.0 * radius * length + PI * radius * radius,
        Shape::Polygon { .. } => signed_area(outline(domain)),
        Shape::LShape { leg, width } => 2.0 * leg * width - width * width,
        Shape::UShape { side, slot_width, slot_depth } => side * side - slot_width * slot_depth,
        Shape::Cylinder { radius, height } => PI * radius * radius * height,
    }
}

/// Axis-aligned bounding box as (lower corner, upper corner).
pub fn bounding_box(domain: &DomainSpec) -> (Vec<f64>, Vec<f64>) {
    let n = domain.dimension;
    match &domain.shape {
        Shape::Ball { radius } => (vec![-radius; n], vec![*radius; n]),
        Shape::Box { sides } => (vec![0.0; n], sides.clone()),
        Shape::Stadium { length, radius } => {
            let half = 0.5 * length + radius;
            (vec![-half, -radius], vec![half, *radius])
        }
        Shape::Cylinder { radius, height } => (vec![-radius, -radius, 0.0], vec![*radius, *radius, *height]),
        Shape::Polygon { .. } | Shape::LShape { .. } | Shape::UShape { .. } => {
            let poly = outline(domain);
            let lo = poly.iter().fold([f64::INFINITY; 2], |m, p| [m[0].min(p.x), m[1].min(p.y)]);
            let hi = poly.iter().fold([f64::NEG_INFINITY; 2], |m, p| [m[0].max(p.x), m[1].max(p.y)]);
            (lo.to_vec(), hi.to_vec())
        }
    }
}

/// Euclidean distance from `point` to the complement; zero outside the domain.
pub fn distance_to_complement(domain: &DomainSpec, point: &[f64]) -> Result<f64> {
    if point.len() != domain.dimension {
        return Err(Error::Argument(format!(
            "point has {} coordinates, domain dimension is {}",
            point.len(),
            domain.dimension
        )));
    }
    if point.iter().any(|v| !v.is_finite()) {
        return Err(Error::Argument("point coordinates must be finite".into()));
    }
    let d = match &domain.shape {
        Shape::Ball { radius } => radius - point.iter().map(|v| v * v).sum::<f64>().sqrt(),
        Shape::Box { sides } => sides
            .iter()
            .zip(point)
            .map(|(s, x)| x.min(s - x))
            .fold(f64::INFINITY, f64::min),
        Shape::Stadium { length, radius } => {
            let x = (point[0].abs() - 0.5 * length).max(0.0);
            radius - x.hypot(point[1])
        }
        Shape::Cylinder { radius, height } => {
            (radius - point[0].hypot(point[1])).min(point[2]).min(height - point[2])
        }
        Shape::Polygon { .. } | Shape::LShape { .. } | Shape::UShape { .. } => {
            let poly = outline(domain);
            let p = P2::new(point[0], point[1]);
            if point_in_polygon(p, poly) {
                boundary_distance(p, poly)
            } else {
                0.0
            }
        }
    };
    Ok(d.max(0.0))
}

/// Largest inscribed disk of a convex polygon: maximize t subject to
/// nᵢ·(c − vᵢ) + t ≤ 0 for every outward unit edge normal nᵢ.
fn chebyshev_radius(poly: &[P2]) -> Result<f64> {
    let n = poly.len();
    let z = poly.iter().fold(P2::new(0.0, 0.0), |acc, p| acc + *p) * (1.0 / n as f64);
    // variables: (u_x, u_y, w_x, w_y, t) with c = z + u − w
    let mut rows = Vec::with_capacity(n);
    let mut rhs = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        let e = b - a;
        let normal = P2::new(e.y, -e.x) * (1.0 / e.norm());
        rows.push(vec![normal.x, normal.y, -normal.x, -normal.y, 1.0]);
        rhs.push(normal.dot(a - z).max(0.0));
    }
    let (_, t) = lp::maximize(&[0.0, 0.0, 0.0, 0.0, 1.0], &rows, &rhs)?;
    if !(t > 0.0) {
        return Err(Error::Geometry("polygon has no interior (degenerate LP)".into()));
    }
    Ok(t)
}

/// Inradius with its provenance.
pub fn inradius_measured(domain: &DomainSpec) -> Result<Measured> {
    Ok(match &domain.shape {
        Shape::Ball { radius } => Measured::exact(*radius),
        Shape::Box { sides } => Measured::exact(0.5 * sides.iter().copied().fold(f64::INFINITY, f64::min)),
        Shape::Stadium { radius, .. } => Measured::exact(*radius),
        Shape::Cylinder { radius, height } => Measured::exact(radius.min(0.5 * height)),
        Shape::LShape { leg, width } => Measured::exact(((2.0 - SQRT_2) * width).min(0.5 * leg)),
        Shape::Polygon { .. } if is_convex(domain) => Measured::exact(chebyshev_radius(outline(domain))?),
        Shape::Polygon { .. } | Shape::UShape { .. } => numerical_dilated(domain, 0.0)?,
    })
}

pub fn inradius(domain: &DomainSpec) -> Result<f64> {
    inradius_measured(domain).map(|m| m.value)
}

pub fn summary(domain: &DomainSpec) -> Result<GeometrySummary> {
    let r = inradius_measured(domain)?;
    Ok(GeometrySummary {
        inradius: r.value,
        volume: volume(domain),
        convex: is_convex(domain),
        resolution: r.resolution,
    })
}

fn check_delta(delta: f64) -> Result<()> {
    if delta.is_finite() && delta >= 0.0 {
        Ok(())
    } else {
        Err(Error::Argument(format!("delta must be finite and ≥ 0, got {delta}")))
    }
}

/// R_δ with its provenance.
pub fn dilated_inradius_measured(domain: &DomainSpec, delta: f64) -> Result<Measured> {
    check_delta(delta)?;
    if is_convex(domain) {
        let r = inradius_measured(domain)?;
        return Ok(Measured { value: r.value + delta, resolution: r.resolution });
    }
    match &domain.shape {
        Shape::LShape { leg, width } => {
            if let Some(v) = l_shape_dilated(domain, *leg, *width, delta) {
                return Ok(Measured::exact(v));
            }
            numerical_dilated(domain, delta)
        }
        _ => numerical_dilated(domain, delta),
    }
}

/// R_δ = inradius of {x : dist(x, Ω) < δ}.
pub fn dilated_inradius(domain: &DomainSpec, delta: f64) -> Result<f64> {
    dilated_inradius_measured(domain, delta).map(|m| m.value)
}

/// R_δ through the distance-based search on the dilated set, ignoring any
/// closed form. Planar polygonal shapes only.
pub fn dilated_inradius_numerical(domain: &DomainSpec, delta: f64) -> Result<Measured> {
    check_delta(delta)?;
    if domain.outline.is_none() {
        return Err(Error::Unsupported(
            "numerical dilation needs a planar polygonal domain".into(),
        ));
    }
    numerical_dilated(domain, delta)
}

fn numerical_dilated(domain: &DomainSpec, delta: f64) -> Result<Measured> {
    let key = delta.to_bits();
    if let Some(m) = domain.cache.lock().expect("cache lock").get(&key) {
        return Ok(*m);
    }
    let poly = outline(domain);
    let region = if delta == 0.0 { Region::polygon(poly) } else { Region::dilated(poly, delta) };
    let best = region.max_inscribed(SEARCH_TARGET, SEARCH_BUDGET);
    if !(best.radius > 0.0) {
        return Err(Error::Geometry("inscribed-disk search found no interior point".into()));
    }
    let m = Measured { value: best.radius, resolution: Some(best.resolution) };
    domain.cache.lock().expect("cache lock").insert(key, m);
    Ok(m)
}

/// Corner-ball tangency for the L-shape. Ω_δ near the arms is an L of leg
/// ℓ + 2δ and width w + 2δ with rounded outer corners; the largest disk sits
/// on the diagonal. When the tangency candidate does not fit (large δ, where
/// the rounded arm ends bind) the exact clearance is maximized along the
/// diagonal instead. None defers to the grid search.
fn l_shape_dilated(domain: &DomainSpec, leg: f64, width: f64, delta: f64) -> Option<f64> {
    let corner = (2.0 - SQRT_2) * (width + 2.0 * delta);
    let span = 0.5 * (leg + 2.0 * delta);
    let rho = corner.min(span);
    let center = if corner <= span {
        P2::new(rho - delta, rho - delta)
    } else {
        P2::new(0.5 * leg, 0.5 * leg)
    };
    let region = Region::dilated(outline(domain), delta);
    if (region.clearance(center) - rho).abs() <= 1e-12 * (1.0 + rho) {
        return Some(rho);
    }
    let f = |c: f64| region.clearance(P2::new(c, c));
    // golden-section search over the diagonal up to the reentrant corner
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (-delta, width + delta);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > 1e-13 * (1.0 + b.abs()) {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        }
    }
    let best = f1.max(f2);
    (best > 0.0).then_some(best)
}

/// Finds δ with δ / R_δ = ratio for a caller-supplied R_δ map, starting from
/// the convex root r0·ratio/(1 − ratio). Returns the bracket end where
/// δ / R_δ ≥ ratio together with R_δ there.
pub(crate) fn solve_delta_with(
    ratio: f64,
    r0: f64,
    mut r_delta: impl FnMut(f64) -> Result<f64>,
) -> Result<(f64, f64)> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::Argument(format!("ratio must lie in (0, 1), got {ratio}")));
    }
    let mut g = |d: f64| -> Result<(f64, f64)> {
        let r = r_delta(d)?;
        Ok((d / r, r))
    };
    let mut lo = r0 * ratio / (1.0 - ratio);
    let (g_lo, r_lo) = g(lo)?;
    if (g_lo - ratio).abs() <= 1e-12 * ratio {
        return Ok((lo, r_lo));
    }
    if g_lo > ratio {
        // R_δ < r0 + δ: the map is below the convex one only through numerical error
        let mut hi = lo;
        let mut r_hi = r_lo;
        for _ in 0..200 {
            lo *= 0.5;
            let (gl, _) = g(lo)?;
            if gl < ratio {
                return bisect(&mut g, ratio, lo, hi, r_hi);
            }
            hi = lo;
            r_hi = r_delta_at(&mut g, hi)?;
        }
        return Err(Error::Numeric("could not bracket δ/R_δ = ratio from below".into()));
    }
    let mut hi = lo;
    for _ in 0..200 {
        hi *= 2.0;
        let (gh, rh) = g(hi)?;
        if gh >= ratio {
            return bisect(&mut g, ratio, lo, hi, rh);
        }
        lo = hi;
    }
    Err(Error::Numeric("δ/R_δ never reached the requested ratio".into()))
}

fn r_delta_at(g: &mut impl FnMut(f64) -> Result<(f64, f64)>, d: f64) -> Result<f64> {
    g(d).map(|(_, r)| r)
}

/// Illinois iteration on h(δ) = δ − ratio·R_δ over a bracket with
/// h(lo) < 0 ≤ h(hi), falling back to bisection when the secant stalls.
fn bisect(
    g: &mut impl FnMut(f64) -> Result<(f64, f64)>,
    ratio: f64,
    mut lo: f64,
    mut hi: f64,
    mut r_hi: f64,
) -> Result<(f64, f64)> {
    let mut h_lo = lo - ratio * r_delta_at(g, lo)?;
    let mut h_hi = hi - ratio * r_hi;
    let mut side = 0i32;
    for _ in 0..200 {
        if hi / r_hi - ratio <= 1e-11 * ratio || hi - lo <= 4.0 * f64::EPSILON * hi {
            return Ok((hi, r_hi));
        }
        let width = hi - lo;
        let mut mid = hi - h_hi * (hi - lo) / (h_hi - h_lo);
        if !(mid > lo + 0.01 * width && mid < hi - 0.01 * width) {
            mid = 0.5 * (lo + hi);
        }
        let (gm, rm) = g(mid)?;
        let hm = mid - ratio * rm;
        if gm >= ratio {
            hi = mid;
            r_hi = rm;
            h_hi = hm;
            if side == 1 {
                h_lo *= 0.5;
            }
            side = 1;
        } else {
            lo = mid;
            h_lo = hm;
            if side == -1 {
                h_hi *= 0.5;
            }
            side = -1;
        }
    }
    Ok((hi, r_hi))
}

/// δ* with δ*/R_δ(δ*) = ratio.
pub fn solve_delta_for_ratio(domain: &DomainSpec, ratio: f64) -> Result<(f64, f64)> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::Argument(format!("ratio must lie in (0, 1), got {ratio}")));
    }
    let r = inradius(domain)?;
    if is_convex(domain) {
        let delta = r * ratio / (1.0 - ratio);
        return Ok((delta, r + delta));
    }
    solve_delta_with(ratio, r, |d| dilated_inradius(domain, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_ball_volumes() {
        assert!((unit_ball_volume(1) - 2.0).abs() < 1e-15);
        assert!((unit_ball_volume(2) - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-15);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn shape_validation() {
        assert!(DomainSpec::l_shape(1.0, 2.0).is_err());
        assert!(DomainSpec::rectangle(&[1.0, -1.0]).is_err());
        assert!(DomainSpec::new(Shape::Ball { radius: 1.0 }, None).is_err());
        assert!(DomainSpec::new(Shape::Stadium { length: 1.0, radius: 1.0 }, Some(3)).is_err());
        assert!(DomainSpec::u_shape(3.0, 3.0, 1.0).is_err());
    }

    #[test]
    fn chebyshev_on_triangle() {
        // 3-4-5 right triangle: inradius (a + b − c)/2 = 1
        let d = DomainSpec::polygon(&[[0.0, 0.0], [4.0, 0.0], [0.0, 3.0]]).unwrap();
        assert!((inradius(&d).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn l_shape_closed_form_matches_search() {
        let d = DomainSpec::l_shape(7.0, 1.0).unwrap();
        for delta in [0.0, 0.2, 1.0, 3.0] {
            let a = dilated_inradius(&d, delta).unwrap();
            let n = dilated_inradius_numerical(&d, delta).unwrap();
            assert!((a - n.value).abs() < 1e-9, "δ={delta}: {a} vs {}", n.value);
        }
    }

    #[test]
    fn l_shape_large_dilation_matches_search() {
        let d = DomainSpec::l_shape(3.0, 1.0).unwrap();
        for delta in [5.0, 10.0, 50.0] {
            let a = dilated_inradius_measured(&d, delta).unwrap();
            let n = dilated_inradius_numerical(&d, delta).unwrap();
            assert!(a.resolution.is_none());
            assert!((a.value - n.value).abs() < 1e-9 * n.value, "δ={delta}: {a:?} vs {n:?}");
        }
    }

    #[test]
    fn solve_delta_on_ball() {
        let d = DomainSpec::ball(2, 1.0).unwrap();
        let (delta, rd) = solve_delta_for_ratio(&d, 0.5).unwrap();
        assert!((delta - 1.0).abs() < 1e-15 && (rd - 2.0).abs() < 1e-15);
    }
}
