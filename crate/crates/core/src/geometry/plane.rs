use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct P2 {
    pub x: f64,
    pub y: f64,
}

impl P2 {
    pub const fn new(x: f64, y: f64) -> Self {
        P2 { x, y }
    }
    pub fn dot(self, o: P2) -> f64 {
        self.x * o.x + self.y * o.y
    }
    pub fn cross(self, o: P2) -> f64 {
        self.x * o.y - self.y * o.x
    }
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }
}

impl Add for P2 {
    type Output = P2;
    fn add(self, o: P2) -> P2 {
        P2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for P2 {
    type Output = P2;
    fn sub(self, o: P2) -> P2 {
        P2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for P2 {
    type Output = P2;
    fn mul(self, s: f64) -> P2 {
        P2::new(self.x * s, self.y * s)
    }
}

/// Closest point of the segment [a, b] to p.
pub(crate) fn closest_on_segment(p: P2, a: P2, b: P2) -> P2 {
    let d = b - a;
    let len2 = d.dot(d);
    if len2 == 0.0 {
        return a;
    }
    let t = ((p - a).dot(d) / len2).clamp(0.0, 1.0);
    a + d * t
}

pub(crate) fn segment_distance(p: P2, a: P2, b: P2) -> f64 {
    (p - closest_on_segment(p, a, b)).norm()
}

pub(crate) fn signed_area(poly: &[P2]) -> f64 {
    let n = poly.len();
    let mut s = 0.0;
    for i in 0..n {
        s += poly[i].cross(poly[(i + 1) % n]);
    }
    0.5 * s
}

/// Even-odd crossing test. Points on the boundary may land on either side.
pub(crate) fn point_in_polygon(p: P2, poly: &[P2]) -> bool {
    let n = poly.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (poly[i], poly[j]);
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

pub(crate) fn boundary_distance(p: P2, poly: &[P2]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| segment_distance(p, poly[i], poly[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min)
}

fn orient(a: P2, b: P2, c: P2) -> f64 {
    (b - a).cross(c - a)
}

fn on_segment(a: P2, b: P2, p: P2) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed-segment intersection test, collinear overlaps included.
pub(crate) fn segments_touch(a: P2, b: P2, c: P2, d: P2) -> bool {
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
        return true;
    }
    (o1 == 0.0 && on_segment(a, b, c))
        || (o2 == 0.0 && on_segment(a, b, d))
        || (o3 == 0.0 && on_segment(c, d, a))
        || (o4 == 0.0 && on_segment(c, d, b))
}

/// Checks vertex count, finiteness, counterclockwise orientation and simplicity.
pub(crate) fn validate_polygon(vertices: &[[f64; 2]]) -> Result<Vec<P2>> {
    if vertices.len() < 3 {
        return Err(Error::Geometry(format!(
            "polygon needs at least 3 vertices, got {}",
            vertices.len()
        )));
    }
    if vertices.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::Geometry("polygon vertex is not finite".into()));
    }
    let poly: Vec<P2> = vertices.iter().map(|v| P2::new(v[0], v[1])).collect();
    let n = poly.len();
    for i in 0..n {
        if poly[i] == poly[(i + 1) % n] {
            return Err(Error::Geometry(format!("repeated vertex at index {i}")));
        }
    }
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let (c, d) = (poly[j], poly[(j + 1) % n]);
            if adjacent {
                // adjacent edges may only share their common vertex
                let shared = if j == i + 1 { b } else { a };
                let (other_a, other_b) = if j == i + 1 { (a, d) } else { (b, c) };
                let o = orient(shared, other_a, other_b);
                if o == 0.0 && (other_a - shared).dot(other_b - shared) > 0.0 {
                    return Err(Error::Geometry(format!(
                        "edges {i} and {j} fold back onto each other"
                    )));
                }
            } else if segments_touch(a, b, c, d) {
                return Err(Error::Geometry(format!(
                    "polygon is not simple: edges {i} and {j} intersect"
                )));
            }
        }
    }
    let area = signed_area(&poly);
    if !(area > 0.0) {
        return Err(Error::Geometry(
            "polygon vertices must be listed counterclockwise with positive area".into(),
        ));
    }
    Ok(poly)
}

/// Counterclockwise polygon convexity: every turn is a left turn or straight.
pub(crate) fn polygon_is_convex(poly: &[P2]) -> bool {
    let n = poly.len();
    let scale = poly.iter().map(|p| p.norm()).fold(1.0, f64::max);
    (0..n).all(|i| {
        let (a, b, c) = (poly[i], poly[(i + 1) % n], poly[(i + 2) % n]);
        orient(a, b, c) >= -1e-14 * scale * scale
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_clockwise_and_bowtie() {
        let cw = [[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]];
        assert!(validate_polygon(&cw).is_err());
        let bowtie = [[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]];
        assert!(validate_polygon(&bowtie).is_err());
        let square = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        assert!(validate_polygon(&square).is_ok());
    }

    #[test]
    fn crossing_test_and_distance() {
        let sq: Vec<P2> = [[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0]]
            .iter()
            .map(|v| P2::new(v[0], v[1]))
            .collect();
        assert!(point_in_polygon(P2::new(1.0, 0.5), &sq));
        assert!(!point_in_polygon(P2::new(3.0, 0.5), &sq));
        assert!((boundary_distance(P2::new(1.0, 0.5), &sq) - 0.5).abs() < 1e-15);
        assert!((signed_area(&sq) - 4.0).abs() < 1e-15);
    }
}
