use super::linalg::solve_dense;
use crate::error::{Error, Result};
use crate::problem::{ConstraintRow, Problem};

/// Largest materialized constraint count accepted by [`qp_active_set`].
pub const QP_MAX_ROWS: usize = 5000;

/// Optimum of a strictly convex QP with multipliers.
#[derive(Debug, Clone, PartialEq)]
pub struct QpSolution {
    pub x: Vec<f64>,
    /// One multiplier per row, `>= 0` for inequalities.
    pub y: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
}

/// `min c'x + x'Hx/2` s.t. the rows, with `H = diag(h)`, by the
/// Goldfarb–Idnani dual active-set method.
///
/// Starts from the unconstrained minimizer, repeatedly adds the most violated
/// row (equalities first) and drops active rows whose multipliers would turn
/// negative. Every iterate is optimal for its active set, so the method needs no
/// feasible starting point.
pub fn solve_diagonal_qp(h: &[f64], c: &[f64], rows: &[ConstraintRow]) -> Result<QpSolution> {
    let nv = h.len();
    if c.len() != nv || h.iter().any(|v| !(*v > 0.0)) {
        return Err(Error::input("QP needs a positive diagonal matching the cost length"));
    }
    let hinv: Vec<f64> = h.iter().map(|v| 1.0 / v).collect();
    let dense: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| {
            let mut a = vec![0.0; nv];
            for &(v, coef) in &r.entries {
                a[v] += coef;
            }
            a
        })
        .collect();
    let mut x: Vec<f64> = c.iter().zip(&hinv).map(|(c, hi)| -c * hi).collect();
    // Active rows as (row index, orientation sign, multiplier of the oriented row).
    let mut active: Vec<(usize, f64, f64)> = Vec::new();
    let mut in_active = vec![false; rows.len()];
    let max_iter = 50 * (rows.len() + nv) + 100;
    let mut iterations = 0;

    let residual = |x: &[f64], i: usize| -> f64 { dot(&dense[i], x) - rows[i].rhs };
    let tol = |i: usize| 1e-12 * (1.0 + rows[i].rhs.abs());

    loop {
        // Most violated row: pending equalities take priority, then lowest index on ties.
        let mut pick: Option<(usize, f64, f64)> = None;
        for (i, r) in rows.iter().enumerate() {
            if in_active[i] || !r.equality {
                continue;
            }
            let v = residual(&x, i);
            let sign = if v < 0.0 { -1.0 } else { 1.0 };
            pick = Some((i, sign, v.abs()));
            break;
        }
        if pick.is_none() {
            let mut best = 0.0;
            for i in 0..rows.len() {
                if in_active[i] || rows[i].equality {
                    continue;
                }
                let v = residual(&x, i);
                if v > tol(i) && v > best {
                    best = v;
                    pick = Some((i, 1.0, v));
                }
            }
        }
        let Some((p, sign, mut viol)) = pick else {
            break;
        };
        let ap: Vec<f64> = dense[p].iter().map(|v| sign * v).collect();
        let mut up = 0.0;

        loop {
            iterations += 1;
            if iterations > max_iter {
                return Err(Error::Numerical("active-set iteration limit reached".into()));
            }
            // r = (N'H^-1 N)^-1 N'H^-1 a_p ; z = -H^-1 (a_p - N r)
            let k = active.len();
            let cols: Vec<Vec<f64>> = active
                .iter()
                .map(|&(i, s, _)| dense[i].iter().map(|v| s * v).collect())
                .collect();
            let r = if k == 0 {
                Vec::new()
            } else {
                let mut m = vec![0.0; k * k];
                let mut rhs = vec![0.0; k];
                for a in 0..k {
                    for b in a..k {
                        let v = weighted_dot(&cols[a], &cols[b], &hinv);
                        m[a * k + b] = v;
                        m[b * k + a] = v;
                    }
                    rhs[a] = weighted_dot(&cols[a], &ap, &hinv);
                }
                solve_dense(m, rhs, k).ok_or_else(|| Error::Numerical("singular active set".into()))?
            };
            let mut z: Vec<f64> = ap.clone();
            for (col, rj) in cols.iter().zip(&r) {
                for (zv, cv) in z.iter_mut().zip(col) {
                    *zv -= rj * cv;
                }
            }
            for (zv, hi) in z.iter_mut().zip(&hinv) {
                *zv *= -hi;
            }
            let curvature: f64 = z.iter().zip(h).map(|(zv, hv)| zv * zv * hv).sum();
            let znorm = z.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            let ap_scale = ap.iter().fold(0.0f64, |a, v| a.max(v.abs())) * hinv.iter().fold(0.0f64, |a, v| a.max(*v));

            // Partial step: largest t keeping active inequality multipliers >= 0.
            let mut t1 = f64::INFINITY;
            let mut drop: Option<usize> = None;
            for (slot, (&(i, _, u), &rj)) in active.iter().zip(&r).enumerate() {
                if rows[i].equality || rj <= 1e-12 {
                    continue;
                }
                let t = u / rj;
                if t < t1 {
                    t1 = t;
                    drop = Some(slot);
                }
            }
            let full_dir = znorm > 1e-12 * ap_scale.max(1.0);
            let t2 = if full_dir { viol / curvature } else { f64::INFINITY };
            let t = t1.min(t2);
            if !t.is_finite() {
                return Err(Error::Infeasible);
            }
            for (slot, rj) in r.iter().enumerate() {
                active[slot].2 -= t * rj;
            }
            up += t;
            if full_dir {
                for (xv, zv) in x.iter_mut().zip(&z) {
                    *xv += t * zv;
                }
                viol -= t * curvature;
            }
            if t2 <= t1 {
                active.push((p, sign, up));
                in_active[p] = true;
                break;
            }
            let slot = drop.expect("partial step has a blocking row");
            in_active[active[slot].0] = false;
            active.remove(slot);
        }
    }

    let mut y = vec![0.0; rows.len()];
    for &(i, s, u) in &active {
        y[i] = s * u.max(if rows[i].equality { f64::NEG_INFINITY } else { 0.0 });
    }
    let objective = dot(c, &x) + 0.5 * x.iter().zip(h).map(|(v, hv)| hv * v * v).sum::<f64>();
    Ok(QpSolution {
        x,
        y,
        objective,
        iterations,
    })
}

/// Exact optimum of the regularized problem `p` by the dense active-set method.
pub fn qp_active_set(p: &Problem, max_rows: usize) -> Result<QpSolution> {
    let m = p.num_constraints();
    if m > max_rows {
        return Err(Error::GuardExceeded(format!("{m} constraints exceed the limit of {max_rows}")));
    }
    let rows: Vec<ConstraintRow> = p.constraints().map(|(_, r)| r).collect();
    let h: Vec<f64> = p.weight().iter().map(|w| w / p.gamma()).collect();
    solve_diagonal_qp(&h, p.cost(), &rows)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn weighted_dot(a: &[f64], b: &[f64], w: &[f64]) -> f64 {
    a.iter().zip(b).zip(w).map(|((x, y), w)| x * y * w).sum()
}
