//! Dense two-phase simplex for tiny linear programs with free variables.
//!
//! Problems here have 2-4 variables and up to a few thousand inequality rows:
//!
//! ```text
//!     maximize  c . y   subject to  G y <= h,  y free
//! ```
//!
//! Rather than a tall primal tableau we solve the dual in standard form,
//!
//! ```text
//!     minimize  h . l   subject to  G^T l = c,  l >= 0
//! ```
//!
//! whose tableau has one row per primal variable. The primal optimum is read
//! back from the simplex multipliers of the final basis.

use crate::error::{Error, Result};
use crate::vector::solve_dense;

const PIVOT_TOL: f64 = 1e-11;

/// Reduced costs count as negative below `-COST_REL_TOL` times the terms
/// they were computed from, `|c_j| + sum_k |c_B(k)| |T_kj|`.
const COST_REL_TOL: f64 = 1e-11;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum LpOutcome {
    Optimal { point: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// `rows[k]` has `cols + 1` entries; the last is the right-hand side.
    rows: Vec<Vec<f64>>,
    /// Reduced costs; last entry holds minus the objective value.
    obj: Vec<f64>,
    basis: Vec<usize>,
    cols: usize,
    /// Cost vector of the current phase.
    cost: Vec<f64>,
    /// Per-column scale of the last pricing, for the optimality tolerance.
    cost_scale: Vec<f64>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = 1.0 / self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v *= inv;
        }
        self.rows[r][c] = 1.0;
        let pivot_row = self.rows[r].clone();
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r {
                continue;
            }
            let factor = row[c];
            if factor != 0.0 {
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= factor * p;
                }
                row[c] = 0.0;
            }
        }
        let factor = self.obj[c];
        if factor != 0.0 {
            for (v, p) in self.obj.iter_mut().zip(&pivot_row) {
                *v -= factor * p;
            }
            self.obj[c] = 0.0;
        }
        self.basis[r] = c;
    }

    /// Recomputes the reduced costs from the current rows. Updating them
    /// through pivots instead lets rounding of size `eps |c| |T|` build up,
    /// which swamps costs many orders of magnitude below the largest one.
    fn price(&mut self, cost: &[f64]) {
        let width = self.cols + 1;
        let mut obj = vec![0.0; width];
        let mut scale = vec![0.0; width];
        obj[..self.cols].copy_from_slice(cost);
        for (s, c) in scale.iter_mut().zip(cost) {
            *s = c.abs();
        }
        for (k, row) in self.rows.iter().enumerate() {
            let cb = cost[self.basis[k]];
            if cb != 0.0 {
                for ((o, s), v) in obj.iter_mut().zip(scale.iter_mut()).zip(row) {
                    *o -= cb * v;
                    *s += (cb * v).abs();
                }
            }
        }
        self.obj = obj;
        self.cost_scale = scale;
        if self.cost.as_slice() != cost {
            self.cost = cost.to_vec();
        }
    }

    /// Minimizes the priced objective. Only columns `< enter_limit` may enter.
    /// Returns `Ok(false)` if the objective is unbounded below.
    fn optimize(&mut self, enter_limit: usize) -> Result<bool> {
        let max_iter = 200 * (self.cols + self.rows.len()) + 1000;
        let bland_after = 4 * self.rows.len() + 16;
        let mut degenerate_streak = 0usize;
        for _ in 0..max_iter {
            let cost = std::mem::take(&mut self.cost);
            self.price(&cost);
            self.cost = cost;
            let tol: Vec<f64> = self.cost_scale[..enter_limit]
                .iter()
                .map(|s| COST_REL_TOL * s + f64::MIN_POSITIVE)
                .collect();
            let entering = if degenerate_streak > bland_after {
                (0..enter_limit).find(|&j| self.obj[j] < -tol[j])
            } else {
                (0..enter_limit)
                    .filter(|&j| self.obj[j] < -tol[j])
                    .min_by(|&a, &b| self.obj[a].total_cmp(&self.obj[b]))
            };
            let Some(c) = entering else {
                return Ok(true);
            };

            let mut leave: Option<(usize, f64)> = None;
            for (k, row) in self.rows.iter().enumerate() {
                let a = row[c];
                if a <= PIVOT_TOL {
                    continue;
                }
                let ratio = row[self.cols].max(0.0) / a;
                leave = match leave {
                    None => Some((k, ratio)),
                    Some((best, best_ratio)) => {
                        let tie = (ratio - best_ratio).abs() <= 1e-12 * (1.0 + best_ratio);
                        if ratio < best_ratio && !tie || tie && self.basis[k] < self.basis[best] {
                            Some((k, ratio))
                        } else {
                            Some((best, best_ratio))
                        }
                    }
                };
            }
            let Some((r, ratio)) = leave else {
                return Ok(false);
            };
            if ratio == 0.0 {
                degenerate_streak += 1;
            } else {
                degenerate_streak = 0;
            }
            self.pivot(r, c);
        }
        Err(Error::NumericalFailure(
            "simplex iteration limit reached".into(),
        ))
    }
}

/// Maximizes `objective . y` subject to `rows[i] . y <= rhs[i]`, `y` free.
pub(crate) fn maximize(objective: &[f64], rows: &[Vec<f64>], rhs: &[f64]) -> Result<LpOutcome> {
    let n = objective.len();
    let m = rows.len();
    debug_assert_eq!(rhs.len(), m);
    debug_assert!(rows.iter().all(|r| r.len() == n));

    // Dual rows are flipped so the equality right-hand sides are nonnegative.
    let signs: Vec<f64> = objective
        .iter()
        .map(|&c| if c < 0.0 { -1.0 } else { 1.0 })
        .collect();
    let cols = m + n;
    let mut tab = Tableau {
        rows: (0..n)
            .map(|k| {
                let mut row = vec![0.0; cols + 1];
                for (j, g) in rows.iter().enumerate() {
                    row[j] = signs[k] * g[k];
                }
                row[m + k] = 1.0;
                row[cols] = signs[k] * objective[k];
                row
            })
            .collect(),
        obj: Vec::new(),
        basis: (m..m + n).collect(),
        cols,
        cost: Vec::new(),
        cost_scale: Vec::new(),
    };

    // Phase 1: drive the artificials out.
    let mut phase1 = vec![0.0; cols];
    phase1[m..].iter_mut().for_each(|c| *c = 1.0);
    tab.price(&phase1);
    tab.optimize(m)?;
    let c_scale = objective.iter().fold(1.0f64, |a, &c| a.max(c.abs()));
    if -tab.obj[cols] > 1e-9 * c_scale {
        // Dual infeasible: the primal is unbounded (callers always pose
        // primal-feasible problems) or infeasible.
        return Ok(LpOutcome::Unbounded);
    }
    for r in 0..n {
        if tab.basis[r] >= m {
            let best = (0..m)
                .filter(|&j| tab.rows[r][j].abs() > PIVOT_TOL)
                .max_by(|&a, &b| tab.rows[r][a].abs().total_cmp(&tab.rows[r][b].abs()));
            if let Some(j) = best {
                tab.pivot(r, j);
            }
        }
    }

    // Phase 2 on the dual objective; artificials stay in the table so the
    // multipliers can be read from their reduced costs.
    let mut phase2 = vec![0.0; cols];
    phase2[..m].copy_from_slice(rhs);
    tab.price(&phase2);
    if !tab.optimize(m)? {
        return Ok(LpOutcome::Infeasible);
    }

    let point = basis_point(&tab, rows, rhs)
        .unwrap_or_else(|| (0..n).map(|k| -signs[k] * tab.obj[m + k]).collect());
    let value = objective.iter().zip(&point).map(|(c, y)| c * y).sum();
    Ok(LpOutcome::Optimal { point, value })
}

/// Primal point solved afresh from the final basis: the basic constraints
/// hold with equality. Avoids the drift accumulated in the objective row.
/// `None` if an artificial is still basic or the basis is singular.
fn basis_point(tab: &Tableau, rows: &[Vec<f64>], rhs: &[f64]) -> Option<Vec<f64>> {
    let m = rows.len();
    let n = tab.basis.len();
    if tab.basis.iter().any(|&j| j >= m) {
        return None;
    }
    let system: Vec<Vec<f64>> = tab
        .basis
        .iter()
        .map(|&j| {
            let mut row = rows[j].clone();
            row.push(rhs[j]);
            row
        })
        .collect();
    let y = solve_dense(system)?;
    debug_assert_eq!(y.len(), n);
    y.iter().all(|v| v.is_finite()).then_some(y)
}

/// Whether `rows . y <= rhs` has a solution.
pub(crate) fn is_feasible(rows: &[Vec<f64>], rhs: &[f64], n: usize) -> Result<bool> {
    match maximize(&vec![0.0; n], rows, rhs)? {
        LpOutcome::Optimal { .. } => Ok(true),
        LpOutcome::Infeasible => Ok(false),
        LpOutcome::Unbounded => Err(Error::NumericalFailure(
            "zero objective reported unbounded".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn optimal(outcome: LpOutcome) -> (Vec<f64>, f64) {
        match outcome {
            LpOutcome::Optimal { point, value } => (point, value),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn box_corner() {
        // max x + y, 0 <= x <= 2, 0 <= y <= 3
        let rows = vec![
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, -1.0],
        ];
        let (p, v) = optimal(maximize(&[1.0, 1.0], &rows, &[2.0, 0.0, 3.0, 0.0]).unwrap());
        assert!((p[0] - 2.0).abs() < 1e-12 && (p[1] - 3.0).abs() < 1e-12);
        assert!((v - 5.0).abs() < 1e-12);
    }

    #[test]
    fn negative_objective_coefficients() {
        // min x + 2y over the triangle x >= 1, y >= -1, x + y <= 4
        let rows = vec![vec![-1.0, 0.0], vec![0.0, -1.0], vec![1.0, 1.0]];
        let (p, v) = optimal(maximize(&[-1.0, -2.0], &rows, &[-1.0, 1.0, 4.0]).unwrap());
        assert!((p[0] - 1.0).abs() < 1e-12 && (p[1] + 1.0).abs() < 1e-12);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn detects_unbounded_and_infeasible() {
        let rows = vec![vec![-1.0, 0.0], vec![0.0, -1.0]];
        assert_eq!(
            maximize(&[1.0, 0.0], &rows, &[0.0, 0.0]).unwrap(),
            LpOutcome::Unbounded
        );
        // x <= -1 and x >= 1
        let rows = vec![vec![1.0], vec![-1.0]];
        assert_eq!(
            maximize(&[1.0], &rows, &[-1.0, -1.0]).unwrap(),
            LpOutcome::Infeasible
        );
        assert!(!is_feasible(&rows, &[-1.0, -1.0], 1).unwrap());
        assert!(is_feasible(&rows, &[1.0, 1.0], 1).unwrap());
    }

    #[test]
    fn tiny_right_hand_sides() {
        // A sliver of width ~1e-13 around the origin next to an O(1) row.
        // min z over the tetrahedral cone z >= |x| + |y| - 1e-13, x <= 1.
        let mut rows = Vec::new();
        for (sx, sy) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
            rows.push(vec![sx, sy, -1.0]);
        }
        rows.push(vec![1.0, 0.0, 0.0]);
        let rhs = vec![1e-13, 1e-13, 1e-13, 1e-13, 1.0];
        let (p, v) = optimal(maximize(&[0.0, 0.0, -1.0], &rows, &rhs).unwrap());
        assert!((v - 1e-13).abs() <= 1e-25, "{p:?} {v}");
        for (row, h) in rows.iter().zip(&rhs) {
            let lhs: f64 = row.iter().zip(&p).map(|(a, b)| a * b).sum();
            assert!(lhs <= h + 1e-25);
        }
    }

    #[test]
    fn degenerate_vertex_with_redundant_rows() {
        // Many rows through the optimum (1, 1).
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for k in 0..20 {
            let t = k as f64 / 19.0;
            rows.push(vec![t, 1.0 - t]);
            rhs.push(1.0);
        }
        rows.push(vec![-1.0, 0.0]);
        rhs.push(0.0);
        rows.push(vec![0.0, -1.0]);
        rhs.push(0.0);
        let (p, v) = optimal(maximize(&[1.0, 1.0], &rows, &rhs).unwrap());
        assert!(
            (p[0] - 1.0).abs() < 1e-10 && (p[1] - 1.0).abs() < 1e-10,
            "{p:?}"
        );
        assert!((v - 2.0).abs() < 1e-10);
    }
}
