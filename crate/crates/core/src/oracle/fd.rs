use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{bounding_box, distance_to_complement, DomainSpec};

const MIN_NODES: usize = 100;
/// Coarse levels are only worth solving above this many nodes.
const COARSE_NODES: usize = 400;
const MAX_OUTER: usize = 500;
const MAX_INNER: usize = 5000;
const INNER_TOL: f64 = 1e-10;
/// Modification weight of the incomplete Cholesky preconditioner.
const OMEGA: f64 = 0.95;
/// Stopping tolerance for the coarse levels, which only seed the next grid.
const SEED_TOL: f64 = 1e-6;
/// Shift fraction and the relative Rayleigh-quotient change below which it applies.
const SHIFT: f64 = 0.85;
const SETTLED: f64 = 1e-2;
const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridEigenResult {
    pub lambda_h: f64,
    pub h: f64,
    pub iterations: usize,
    /// Rows (x, y, value) over the interior nodes, scaled to max value 1.
    pub eigenvector: Option<Vec<[f64; 3]>>,
}

/// Interior nodes of the grid x = lo + i·h in row-major order with their
/// west, south, east and north neighbours.
struct Grid {
    lo: [f64; 2],
    h: f64,
    nx: usize,
    ny: usize,
    index: Vec<u32>,
    nodes: Vec<(usize, usize)>,
    nbr: Vec<[u32; 4]>,
}

impl Grid {
    fn new(domain: &DomainSpec, h: f64) -> Result<Grid> {
        let (lo, hi) = bounding_box(domain);
        let nx = ((hi[0] - lo[0]) / h).ceil() as usize + 1;
        let ny = ((hi[1] - lo[1]) / h).ceil() as usize + 1;
        if nx.saturating_mul(ny) > 50_000_000 {
            return Err(Error::Argument(format!("grid spacing {h} gives too many nodes")));
        }
        let mut index = vec![NONE; nx * ny];
        let mut nodes = Vec::new();
        for j in 0..ny {
            for i in 0..nx {
                let p = [lo[0] + i as f64 * h, lo[1] + j as f64 * h];
                if distance_to_complement(domain, &p)? > 0.0 {
                    index[j * nx + i] = nodes.len() as u32;
                    nodes.push((i, j));
                }
            }
        }
        let at = |i: isize, j: isize| {
            if i < 0 || j < 0 || i as usize >= nx || j as usize >= ny {
                NONE
            } else {
                index[j as usize * nx + i as usize]
            }
        };
        let nbr = nodes
            .iter()
            .map(|&(i, j)| {
                let (i, j) = (i as isize, j as isize);
                [at(i - 1, j), at(i, j - 1), at(i + 1, j), at(i, j + 1)]
            })
            .collect();
        Ok(Grid { lo: [lo[0], lo[1]], h, nx, ny, index, nodes, nbr })
    }

    fn len(&self) -> usize {
        self.nodes.len()
    }

    /// (4I − adjacency)·x, the stencil without its 1/h² factor.
    fn apply(&self, x: &[f64], out: &mut [f64]) {
        for (k, nb) in self.nbr.iter().enumerate() {
            let mut s = 4.0 * x[k];
            for &m in nb {
                if m != NONE {
                    s -= x[m as usize];
                }
            }
            out[k] = s;
        }
    }

    fn value_at(&self, field: &[f64], i: usize, j: usize) -> f64 {
        if i >= self.nx || j >= self.ny {
            return 0.0;
        }
        match self.index[j * self.nx + i] {
            NONE => 0.0,
            k => field[k as usize],
        }
    }
}

/// Modified incomplete Cholesky factor M = (D − E)D⁻¹(D − E)ᵀ; stores D⁻¹.
struct Mic {
    inv: Vec<f64>,
}

impl Mic {
    fn new(grid: &Grid) -> Mic {
        let mut inv: Vec<f64> = Vec::with_capacity(grid.len());
        for nb in &grid.nbr {
            let [w, s, _, _] = *nb;
            let mut d = 4.0;
            if w != NONE {
                let fill = if grid.nbr[w as usize][3] != NONE { OMEGA } else { 0.0 };
                d -= (1.0 + fill) * inv[w as usize];
            }
            if s != NONE {
                let fill = if grid.nbr[s as usize][2] != NONE { OMEGA } else { 0.0 };
                d -= (1.0 + fill) * inv[s as usize];
            }
            inv.push(1.0 / d.max(1e-3));
        }
        Mic { inv }
    }

    fn solve(&self, grid: &Grid, r: &[f64], z: &mut [f64]) {
        let at = |z: &[f64], m: u32| if m == NONE { 0.0 } else { z[m as usize] };
        for k in 0..grid.len() {
            let [w, s, _, _] = grid.nbr[k];
            z[k] = (r[k] + at(z, w) + at(z, s)) * self.inv[k];
        }
        for k in (0..grid.len()).rev() {
            let [_, _, e, n] = grid.nbr[k];
            z[k] += (at(z, e) + at(z, n)) * self.inv[k];
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Preconditioned conjugate gradients for (4I − adjacency − σI)x = b from the
/// given start. `None` signals non-positive curvature, i.e. σ was too large.
fn pcg(grid: &Grid, mic: &Mic, sigma: f64, b: &[f64], x: &mut [f64]) -> Result<Option<usize>> {
    let n = grid.len();
    let apply = |v: &[f64], out: &mut [f64]| {
        grid.apply(v, out);
        for k in 0..n {
            out[k] -= sigma * v[k];
        }
    };
    let mut r = vec![0.0; n];
    apply(x, &mut r);
    for k in 0..n {
        r[k] = b[k] - r[k];
    }
    let target = INNER_TOL * dot(b, b).sqrt();
    let mut z = vec![0.0; n];
    mic.solve(grid, &r, &mut z);
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut q = vec![0.0; n];
    for it in 0..MAX_INNER {
        if dot(&r, &r).sqrt() <= target {
            return Ok(Some(it));
        }
        apply(&p, &mut q);
        let curvature = dot(&p, &q);
        if curvature <= 0.0 {
            return Ok(None);
        }
        let step = rz / curvature;
        for k in 0..n {
            x[k] += step * p[k];
            r[k] -= step * q[k];
        }
        mic.solve(grid, &r, &mut z);
        let next = dot(&r, &z);
        let beta = next / rz;
        rz = next;
        for k in 0..n {
            p[k] = z[k] + beta * p[k];
        }
    }
    Err(Error::Numeric(format!("inner solve did not reach {INNER_TOL} in {MAX_INNER} iterations")))
}

/// Shifted inverse iteration from `start`; returns (λ without the 1/h²
/// factor, vector, iterations). The shift σ = SHIFT·μ is switched on once the
/// Rayleigh quotient μ ≥ λ₁ has settled, so σ stays below λ₁.
fn inverse_iteration(grid: &Grid, mut u: Vec<f64>, tol: f64) -> Result<(f64, Vec<f64>, usize)> {
    let n = grid.len();
    let mic = Mic::new(grid);
    let mut bu = vec![0.0; n];
    let norm = dot(&u, &u).sqrt();
    u.iter_mut().for_each(|v| *v /= norm);
    grid.apply(&u, &mut bu);
    let mut mu = dot(&u, &bu);
    let mut sigma = 0.0;
    for it in 1..=MAX_OUTER {
        let mut x: Vec<f64> = u.iter().map(|v| v / (mu - sigma)).collect();
        if pcg(grid, &mic, sigma, &u, &mut x)?.is_none() {
            sigma = 0.0;
            x = u.iter().map(|v| v / mu).collect();
            if pcg(grid, &mic, 0.0, &u, &mut x)?.is_none() {
                return Err(Error::Numeric("grid operator is not positive definite".into()));
            }
        }
        grid.apply(&x, &mut bu);
        let xx = dot(&x, &x);
        let next = dot(&x, &bu) / xx;
        let norm = xx.sqrt();
        u = x.into_iter().map(|v| v / norm).collect();
        let change = (mu - next).abs();
        mu = next;
        if change <= tol * next {
            return Ok((mu, u, it));
        }
        if change <= SETTLED * next {
            sigma = SHIFT * mu;
        }
    }
    Err(Error::Numeric(format!(
        "inverse iteration did not converge in {MAX_OUTER} steps, last estimate {}",
        mu / (grid.h * grid.h)
    )))
}

fn solve(domain: &DomainSpec, grid: Grid, tol: f64) -> Result<(Grid, f64, Vec<f64>, usize)> {
    let h = grid.h;
    let start = if grid.len() / 4 >= COARSE_NODES {
        let coarse = Grid::new(domain, 2.0 * h)?;
        let (coarse, _, field, _) = solve(domain, coarse, tol.max(SEED_TOL))?;
        // bilinear prolongation; the grids share their origin
        grid.nodes
            .iter()
            .map(|&(i, j)| {
                let (ci, cj) = (i / 2, j / 2);
                let (di, dj) = (i % 2, j % 2);
                0.25 * (coarse.value_at(&field, ci, cj)
                    + coarse.value_at(&field, ci + di, cj)
                    + coarse.value_at(&field, ci, cj + dj)
                    + coarse.value_at(&field, ci + di, cj + dj))
            })
            .collect()
    } else {
        grid.nodes
            .iter()
            .map(|&(i, j)| {
                let p = [grid.lo[0] + i as f64 * h, grid.lo[1] + j as f64 * h];
                distance_to_complement(domain, &p)
            })
            .collect::<Result<Vec<f64>>>()?
    };
    let start = if start.iter().any(|v| *v > 0.0) { start } else { vec![1.0; grid.len()] };
    let (mu, u, iterations) = inverse_iteration(&grid, start, tol)?;
    Ok((grid, mu, u, iterations))
}

/// Smallest eigenvalue of the 5-point Dirichlet Laplacian on the nodes
/// lo + (i, j)·h that lie in the open domain, by inverse iteration with
/// MIC(0)-preconditioned conjugate-gradient inner solves. Finer grids start
/// from the prolonged eigenvector of the grid with spacing 2h.
pub fn fd_laplacian_lambda1(domain: &DomainSpec, h: f64, tol: f64) -> Result<GridEigenResult> {
    if domain.dimension() != 2 {
        return Err(Error::Argument(format!(
            "the grid oracle is planar, domain dimension is {}",
            domain.dimension()
        )));
    }
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::Argument(format!("grid spacing must be finite and positive, got {h}")));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Argument(format!("tol must be finite and positive, got {tol}")));
    }
    let grid = Grid::new(domain, h)?;
    if grid.len() < MIN_NODES {
        return Err(Error::Argument(format!(
            "grid spacing {h} leaves {} interior nodes, need at least {MIN_NODES}",
            grid.len()
        )));
    }
    let (grid, mu, mut u, iterations) = solve(domain, grid, tol)?;
    if u.iter().sum::<f64>() < 0.0 {
        u.iter_mut().for_each(|v| *v = -*v);
    }
    let top = u.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let field = grid
        .nodes
        .iter()
        .zip(&u)
        .map(|(&(i, j), v)| [grid.lo[0] + i as f64 * h, grid.lo[1] + j as f64 * h, v / top])
        .collect();
    Ok(GridEigenResult { lambda_h: mu / (h * h), h, iterations, eigenvector: Some(field) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn square_matches_discrete_formula() {
        let h = 1.0 / 32.0;
        let r = fd_laplacian_lambda1(&DomainSpec::rectangle(&[1.0, 1.0]).unwrap(), h, 1e-12).unwrap();
        let exact = 2.0 * 4.0 / (h * h) * (PI * h / 2.0).sin().powi(2);
        assert!((r.lambda_h - exact).abs() < 1e-8 * exact, "{} vs {exact}", r.lambda_h);
        let field = r.eigenvector.unwrap();
        assert_eq!(field.len(), 31 * 31);
        assert!(field.iter().all(|row| row[2] > 0.0));
    }

    #[test]
    fn too_coarse_grid_is_rejected() {
        let sq = DomainSpec::rectangle(&[1.0, 1.0]).unwrap();
        assert!(matches!(fd_laplacian_lambda1(&sq, 0.25, 1e-8), Err(Error::Argument(_))));
        let cyl = DomainSpec::cylinder(1.0, 1.0).unwrap();
        assert!(fd_laplacian_lambda1(&cyl, 0.1, 1e-8).is_err());
    }
}
