//! Dense primal simplex for small problems of the form
//! maximize c·x subject to A x ≤ b, x ≥ 0, with b ≥ 0.
//!
//! The origin is feasible under b ≥ 0, so no phase one is needed. Bland's
//! rule guarantees termination on degenerate vertices.

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-12;

/// Returns (optimal x, optimal objective).
pub(crate) fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<(Vec<f64>, f64)> {
    let n = c.len();
    let m = a.len();
    if b.len() != m || a.iter().any(|row| row.len() != n) {
        return Err(Error::Argument("LP dimensions disagree".into()));
    }
    if b.iter().any(|&v| v < 0.0 || !v.is_finite()) {
        return Err(Error::Geometry(
            "LP right-hand side must be finite and non-negative".into(),
        ));
    }
    // tableau rows: [A | I | b]; objective row: [-c | 0 | 0]
    let width = n + m + 1;
    let mut t = vec![vec![0.0; width]; m + 1];
    for i in 0..m {
        t[i][..n].copy_from_slice(&a[i]);
        t[i][n + i] = 1.0;
        t[i][width - 1] = b[i];
    }
    for j in 0..n {
        t[m][j] = -c[j];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    for _ in 0..50 * (n + m + 10) {
        // entering column: lowest index with negative reduced cost
        let Some(col) = (0..n + m).find(|&j| t[m][j] < -PIVOT_EPS) else {
            let mut x = vec![0.0; n];
            for (i, &bv) in basis.iter().enumerate() {
                if bv < n {
                    x[bv] = t[i][width - 1];
                }
            }
            return Ok((x, t[m][width - 1]));
        };
        // ratio test, ties broken by lowest basis index
        let mut row = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            if t[i][col] > PIVOT_EPS {
                let ratio = t[i][width - 1] / t[i][col];
                let better = match row {
                    None => true,
                    Some(r) => {
                        ratio < best - 1e-15 * best.abs().max(1.0)
                            || (ratio <= best + 1e-15 * best.abs().max(1.0)
                                && basis[i] < basis[r])
                    }
                };
                if better {
                    best = ratio;
                    row = Some(i);
                }
            }
        }
        let Some(r) = row else {
            return Err(Error::Geometry("LP is unbounded".into()));
        };
        let pivot = t[r][col];
        for v in t[r].iter_mut() {
            *v /= pivot;
        }
        let pivot_row = t[r].clone();
        for (i, tr) in t.iter_mut().enumerate() {
            if i != r {
                let f = tr[col];
                if f != 0.0 {
                    for (v, p) in tr.iter_mut().zip(&pivot_row) {
                        *v -= f * p;
                    }
                }
            }
        }
        basis[r] = col;
    }
    Err(Error::Numeric("simplex iteration limit reached".into()))
}
