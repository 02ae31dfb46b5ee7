//! Planar regions bounded by segments and circular arcs: a polygon, or the
//! open δ-neighbourhood of a polygon. The largest inscribed disk is found by
//! Lipschitz branch and bound over exact distance evaluations, with
//! sequential linear programming polishing the incumbent.

use std::f64::consts::TAU;

use super::plane::{boundary_distance, closest_on_segment, point_in_polygon, P2};

#[derive(Debug, Clone, Copy)]
pub(crate) enum Piece {
    Seg(P2, P2),
    /// Arc of radius `r` about `c`, counterclockwise from angle `a0` through `sweep`.
    Arc { c: P2, r: f64, a0: f64, sweep: f64 },
}

impl Piece {
    fn closest(&self, p: P2) -> P2 {
        match *self {
            Piece::Seg(a, b) => closest_on_segment(p, a, b),
            Piece::Arc { c, r, a0, sweep } => {
                let d = p - c;
                let len = d.norm();
                if len > 0.0 {
                    let rel = (d.y.atan2(d.x) - a0).rem_euclid(TAU);
                    if rel <= sweep {
                        return c + d * (r / len);
                    }
                }
                let s = c + P2::new(a0.cos(), a0.sin()) * r;
                let e = c + P2::new((a0 + sweep).cos(), (a0 + sweep).sin()) * r;
                if (p - s).norm() <= (p - e).norm() {
                    s
                } else {
                    e
                }
            }
        }
    }

    fn midpoint(&self) -> P2 {
        match *self {
            Piece::Seg(a, b) => (a + b) * 0.5,
            Piece::Arc { c, r, a0, sweep } => {
                let t = a0 + 0.5 * sweep;
                c + P2::new(t.cos(), t.sin()) * r
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Inscribed {
    pub radius: f64,
    /// Certified gap: the true maximum lies in [radius, radius + resolution].
    pub resolution: f64,
}

#[derive(Debug, Clone)]
pub(crate) struct Region {
    poly: Vec<P2>,
    delta: f64,
    pieces: Vec<Piece>,
}

impl Region {
    pub fn polygon(poly: &[P2]) -> Region {
        let n = poly.len();
        let pieces = (0..n).map(|i| Piece::Seg(poly[i], poly[(i + 1) % n])).collect();
        Region { poly: poly.to_vec(), delta: 0.0, pieces }
    }

    /// The set {x : dist(x, polygon) < delta}, delta > 0.
    pub fn dilated(poly: &[P2], delta: f64) -> Region {
        if delta == 0.0 {
            return Region::polygon(poly);
        }
        let n = poly.len();
        let mut segs: Vec<(P2, P2)> = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            let d = b - a;
            let normal = P2::new(d.y, -d.x) * (delta / d.norm());
            segs.push((a + normal, b + normal));
        }
        // cut parameters along segments and angles around vertex circles
        let mut seg_cuts: Vec<Vec<f64>> = vec![vec![0.0, 1.0]; n];
        let mut circ_cuts: Vec<Vec<f64>> = vec![Vec::new(); n];
        for i in 0..n {
            // tangency points with the two adjacent offset edges
            let v = poly[i];
            for p in [segs[i].0, segs[(i + n - 1) % n].1] {
                circ_cuts[i].push(angle_of(p - v));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if let Some((t, u)) = seg_seg(segs[i], segs[j]) {
                    seg_cuts[i].push(t);
                    seg_cuts[j].push(u);
                }
            }
            for j in 0..n {
                for (t, ang) in seg_circle(segs[i], poly[j], delta) {
                    seg_cuts[i].push(t);
                    circ_cuts[j].push(ang);
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for (ai, aj) in circle_circle(poly[i], poly[j], delta) {
                    circ_cuts[i].push(ai);
                    circ_cuts[j].push(aj);
                }
            }
        }
        let mut candidates = Vec::new();
        for (i, cuts) in seg_cuts.iter_mut().enumerate() {
            cuts.sort_by(f64::total_cmp);
            cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
            let (a, b) = segs[i];
            for w in cuts.windows(2) {
                if w[1] - w[0] > 1e-13 {
                    candidates.push(Piece::Seg(a + (b - a) * w[0], a + (b - a) * w[1]));
                }
            }
        }
        for (i, cuts) in circ_cuts.iter_mut().enumerate() {
            for a in cuts.iter_mut() {
                *a = a.rem_euclid(TAU);
            }
            cuts.sort_by(f64::total_cmp);
            cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
            if cuts.is_empty() {
                candidates.push(Piece::Arc { c: poly[i], r: delta, a0: 0.0, sweep: TAU });
                continue;
            }
            for k in 0..cuts.len() {
                let a0 = cuts[k];
                let a1 = if k + 1 < cuts.len() { cuts[k + 1] } else { cuts[0] + TAU };
                if a1 - a0 > 1e-13 {
                    candidates.push(Piece::Arc { c: poly[i], r: delta, a0, sweep: a1 - a0 });
                }
            }
        }
        let pieces = candidates
            .into_iter()
            .filter(|piece| {
                let m = piece.midpoint();
                !point_in_polygon(m, poly) && boundary_distance(m, poly) >= delta * (1.0 - 1e-9)
            })
            .collect();
        Region { poly: poly.to_vec(), delta, pieces }
    }

    pub fn contains(&self, p: P2) -> bool {
        point_in_polygon(p, &self.poly)
            || (self.delta > 0.0 && boundary_distance(p, &self.poly) < self.delta)
    }

    /// Distance from p to the complement; zero outside.
    pub fn clearance(&self, p: P2) -> f64 {
        if !self.contains(p) {
            return 0.0;
        }
        self.pieces
            .iter()
            .map(|piece| (p - piece.closest(p)).norm())
            .fold(f64::INFINITY, f64::min)
    }

    fn bbox(&self) -> (P2, P2) {
        let mut lo = P2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = P2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.poly {
            lo = P2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = P2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let d = self.delta;
        (P2::new(lo.x - d, lo.y - d), P2::new(hi.x + d, hi.y + d))
    }

    /// Upper bound of the clearance over the square of half-width `half`
    /// about c. Every boundary piece bounds the clearance from above; the
    /// distance to a segment is convex, so its maximum over the square sits
    /// at a corner. An arc is no farther than either endpoint, which gives
    /// the same corner bound, and no farther than the 1-Lipschitz bound.
    fn cell_bound(&self, c: P2, half: f64) -> f64 {
        let corners = [
            P2::new(c.x - half, c.y - half),
            P2::new(c.x + half, c.y - half),
            P2::new(c.x - half, c.y + half),
            P2::new(c.x + half, c.y + half),
        ];
        let reach = half * std::f64::consts::SQRT_2;
        self.pieces
            .iter()
            .map(|piece| match *piece {
                Piece::Seg(a, b) => corners
                    .iter()
                    .map(|&q| (q - closest_on_segment(q, a, b)).norm())
                    .fold(0.0, f64::max),
                Piece::Arc { c: o, r, a0, sweep } => {
                    let ends = [a0, a0 + sweep].map(|t| o + P2::new(t.cos(), t.sin()) * r);
                    let far = |e: P2| corners.iter().map(|&q| (q - e).norm()).fold(0.0, f64::max);
                    far(ends[0]).min(far(ends[1])).min((c - piece.closest(c)).norm() + reach)
                }
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest inscribed disk by branch and bound on square cells, pruning
    /// with [`Region::cell_bound`]. Cells are split until the
    /// certified gap between the best found value and the best remaining
    /// bound drops below `rel_target`·diameter or the evaluation budget runs
    /// out; the gap is reported as the resolution.
    pub fn max_inscribed(&self, rel_target: f64, budget: usize) -> Inscribed {
        let (lo, hi) = self.bbox();
        let diameter = (hi - lo).norm();
        let target = rel_target * diameter;
        let side = (hi.x - lo.x).max(hi.y - lo.y) / 16.0;
        let nx = ((hi.x - lo.x) / side).ceil().max(1.0) as usize;
        let ny = ((hi.y - lo.y) / side).ceil().max(1.0) as usize;
        let mut half = 0.5 * side;
        let mut cells: Vec<(P2, f64, f64)> = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let c = P2::new(lo.x + (i as f64 + 0.5) * side, lo.y + (j as f64 + 0.5) * side);
                cells.push((c, self.clearance(c), self.cell_bound(c, half)));
            }
        }
        let mut evals = cells.len();
        let mut best_c = cells[0].0;
        let mut best = f64::NEG_INFINITY;
        for &(c, v, _) in &cells {
            if v > best {
                best = v;
                best_c = c;
            }
        }
        let mut dropped = f64::NEG_INFINITY;
        let mut refined_at: Option<P2> = None;
        loop {
            if refined_at != Some(best_c) {
                let (c, v) = self.refine(best_c, half);
                if v > best {
                    best = v;
                    best_c = c;
                }
                refined_at = Some(best_c);
            }
            let mut kept = Vec::with_capacity(cells.len());
            for &(c, v, ub) in &cells {
                if ub > best + target {
                    kept.push((c, v, ub));
                } else {
                    dropped = dropped.max(ub);
                }
            }
            cells = kept;
            if cells.is_empty() || evals + 4 * cells.len() > budget {
                break;
            }
            half *= 0.5;
            let mut next = Vec::with_capacity(4 * cells.len());
            let mut level_best: Option<(P2, f64)> = None;
            for &(c, _, _) in &cells {
                for (dx, dy) in [(-1.0, -1.0), (1.0, -1.0), (-1.0, 1.0), (1.0, 1.0)] {
                    let child = P2::new(c.x + dx * half, c.y + dy * half);
                    let v = self.clearance(child);
                    if level_best.map_or(true, |b| v > b.1) {
                        level_best = Some((child, v));
                    }
                    next.push((child, v, self.cell_bound(child, half)));
                }
            }
            evals += next.len();
            cells = next;
            if let Some((c, v)) = level_best {
                if v > best {
                    best = v;
                    best_c = c;
                }
            }
        }
        let remaining = cells.iter().map(|&(_, _, ub)| ub).fold(dropped, f64::max);
        Inscribed { radius: best, resolution: (remaining - best).max(0.0) }
    }

    /// Trust-region sequential LP on max_c min_i dist(c, piece_i).
    fn refine(&self, start: P2, h: f64) -> (P2, f64) {
        let mut c = start;
        let mut rho = self.clearance(c);
        let mut trust = h;
        let floor = 1e-15 * (1.0 + c.norm() + rho);
        for _ in 0..400 {
            if trust < floor {
                break;
            }
            let mut planes: Vec<(P2, f64)> = Vec::new();
            for piece in &self.pieces {
                let q = piece.closest(c);
                let d = (c - q).norm();
                if d <= rho + 3.0 * trust && d > 0.0 {
                    planes.push(((c - q) * (1.0 / d), d));
                }
            }
            let Some((step, predicted)) = lp_step(&planes, trust) else {
                break;
            };
            let candidate = c + step;
            let value = self.clearance(candidate);
            if value > rho && value - rho >= 0.1 * (predicted - rho) {
                c = candidate;
                rho = value;
                if (step.x.abs().max(step.y.abs())) >= 0.99 * trust {
                    trust *= 2.0;
                }
            } else {
                trust *= 0.25;
            }
        }
        (c, rho)
    }
}

fn angle_of(d: P2) -> f64 {
    d.y.atan2(d.x)
}

/// Maximizes t subject to t ≤ d_i + g_i·s and |s|∞ ≤ trust by vertex
/// enumeration. Returns (s, t).
fn lp_step(planes: &[(P2, f64)], trust: f64) -> Option<(P2, f64)> {
    // rows as a·(t, sx, sy) ≤ b
    let mut rows: Vec<([f64; 3], f64)> = planes
        .iter()
        .map(|&(g, d)| ([1.0, -g.x, -g.y], d))
        .collect();
    rows.push(([0.0, 1.0, 0.0], trust));
    rows.push(([0.0, -1.0, 0.0], trust));
    rows.push(([0.0, 0.0, 1.0], trust));
    rows.push(([0.0, 0.0, -1.0], trust));
    let m = rows.len();
    let mut best: Option<(f64, f64, P2)> = None;
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let Some(x) = solve3([rows[i].0, rows[j].0, rows[k].0], [rows[i].1, rows[j].1, rows[k].1])
                else {
                    continue;
                };
                let slack = 1e-12 * (1.0 + trust);
                if rows.iter().all(|(a, b)| a[0] * x[0] + a[1] * x[1] + a[2] * x[2] <= b + slack * (1.0 + b.abs())) {
                    let s = P2::new(x[1], x[2]);
                    let size = s.norm();
                    let better = match best {
                        None => true,
                        Some((t, sz, _)) => x[0] > t + 1e-15 * (1.0 + t.abs()) || (x[0] >= t - 1e-15 * (1.0 + t.abs()) && size < sz),
                    };
                    if better {
                        best = Some((x[0], size, s));
                    }
                }
            }
        }
    }
    best.map(|(t, _, s)| (s, t))
}

fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let det = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(a);
    if d.abs() < 1e-14 {
        return None;
    }
    let mut x = [0.0; 3];
    for (col, xc) in x.iter_mut().enumerate() {
        let mut m = a;
        for r in 0..3 {
            m[r][col] = b[r];
        }
        *xc = det(m) / d;
    }
    Some(x)
}

fn seg_seg(s: (P2, P2), o: (P2, P2)) -> Option<(f64, f64)> {
    let r = s.1 - s.0;
    let q = o.1 - o.0;
    let denom = r.cross(q);
    if denom.abs() < 1e-300 {
        return None;
    }
    let w = o.0 - s.0;
    let t = w.cross(q) / denom;
    let u = w.cross(r) / denom;
    ((0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u)).then_some((t, u))
}

fn seg_circle(s: (P2, P2), c: P2, r: f64) -> Vec<(f64, f64)> {
    let d = s.1 - s.0;
    let f = s.0 - c;
    let a = d.dot(d);
    let b = 2.0 * f.dot(d);
    let cc = f.dot(f) - r * r;
    let disc = b * b - 4.0 * a * cc;
    if disc < 0.0 {
        return Vec::new();
    }
    let sq = disc.sqrt();
    let mut out = Vec::new();
    for t in [(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)] {
        if (0.0..=1.0).contains(&t) {
            out.push((t, angle_of(s.0 + d * t - c)));
        }
    }
    out
}

fn circle_circle(c1: P2, c2: P2, r: f64) -> Vec<(f64, f64)> {
    let d = c2 - c1;
    let dist = d.norm();
    if dist == 0.0 || dist > 2.0 * r {
        return Vec::new();
    }
    let mid = c1 + d * 0.5;
    let h = (r * r - 0.25 * dist * dist).max(0.0).sqrt();
    let perp = P2::new(-d.y, d.x) * (h / dist);
    [mid + perp, mid - perp]
        .into_iter()
        .map(|p| (angle_of(p - c1), angle_of(p - c2)))
        .collect()
}
