//! Dense reference solvers for small instances.
//!
//! These use different algorithms from the projection solver (active sets,
//! simplex pivots, exhaustive enumeration) so that agreement between them is
//! meaningful. All of them refuse inputs above fixed size guards.

mod hildreth;
pub mod ilp;
mod linalg;
mod qp;
mod simplex;

pub use hildreth::{kkt_residual, DenseHildreth};
pub use linalg::solve_dense;
pub use qp::{qp_active_set, solve_diagonal_qp, QpSolution, QP_MAX_ROWS};
pub use simplex::{lp_simplex_small, DenseLp, LpSolution, Sense, LP_MAX_ENTRIES};

use crate::problem::{num_pairs, pair_index, Problem};

/// The unregularized LP `min c'x` over the problem's constraints, with free
/// variables (all bounds are already constraint rows).
pub fn linear_relaxation(p: &Problem) -> DenseLp {
    let nv = p.num_vars();
    let mut lp = DenseLp::new(p.cost().to_vec(), false);
    for v in 0..nv {
        lp.set_bounds(v, f64::NEG_INFINITY, f64::INFINITY);
    }
    for (_, row) in p.constraints() {
        let sense = if row.equality { Sense::Eq } else { Sense::Le };
        lp.add_sparse_row(&row.entries, sense, row.rhs);
    }
    lp
}

/// Correlation clustering LP in its original form,
/// `min sum w+ x + w- (1 - x)` over metrics in `[0, 1]`, as an LP plus the
/// constant `sum w-`.
pub fn correlation_clustering_lp(n: usize, pos: &[f64], neg: &[f64]) -> (DenseLp, f64) {
    let pairs = num_pairs(n);
    assert!(pos.len() == pairs && neg.len() == pairs);
    let cost = pos.iter().zip(neg).map(|(p, q)| p - q).collect();
    let mut lp = DenseLp::new(cost, false);
    for v in 0..pairs {
        lp.set_bounds(v, 0.0, 1.0);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let v = [pair_index(n, i, j), pair_index(n, i, k), pair_index(n, j, k)];
                for s in crate::problem::TRIANGLE_ORIENTATIONS {
                    lp.add_sparse_row(&[(v[0], s[0]), (v[1], s[1]), (v[2], s[2])], Sense::Le, 0.0);
                }
            }
        }
    }
    (lp, neg.iter().sum())
}
