//! Dykstra's cyclic projection method for the regularized problems.
//!
//! Each sweep visits every constraint once, undoing that constraint's previous
//! correction and re-projecting. The stored multipliers are the dual variables,
//! so after each sweep the solver has both a primal point and a lower bound
//! `D(y)` on the optimum, and stops once the two agree.

mod dual_store;
mod state;

pub use dual_store::{DualEntry, DualStore};
pub use state::{max_violation, Objectives, PassStats, SolverState, VisitObserver, GAP_FLOOR};

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::Problem;

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Relative duality gap target.
    pub tol_gap: f64,
    /// Largest allowed constraint violation.
    pub tol_con: f64,
    pub max_passes: usize,
    /// Significant-digit counts tried when rounding, ascending.
    pub round_digits: Vec<u32>,
    /// Passes between full violation scans while far from convergence.
    pub full_check_period: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol_gap: 1e-4,
            tol_con: 1e-8,
            max_passes: 10_000,
            round_digits: (2..=8).collect(),
            full_check_period: 10,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol_gap > 0.0 && self.tol_gap.is_finite()) {
            return Err(Error::param(format!("tol_gap must be positive, got {}", self.tol_gap)));
        }
        if !(self.tol_con > 0.0 && self.tol_con.is_finite()) {
            return Err(Error::param(format!("tol_con must be positive, got {}", self.tol_con)));
        }
        if self.max_passes == 0 {
            return Err(Error::param("max_passes must be at least 1"));
        }
        if self.full_check_period == 0 {
            return Err(Error::param("full_check_period must be at least 1"));
        }
        if self.round_digits.is_empty() || self.round_digits.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::param("round_digits must be nonempty and strictly ascending"));
        }
        if self.round_digits.iter().any(|&r| r == 0 || r > 17) {
            return Err(Error::param("round_digits entries must lie in 1..=17"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    /// Gap and violation tolerances met by the iterate itself.
    GapMet,
    /// A rounded copy of the iterate met both tolerances.
    Rounded,
    MaxPasses,
}

impl Termination {
    pub fn converged(self) -> bool {
        !matches!(self, Termination::MaxPasses)
    }
}

#[derive(Debug, Clone)]
pub struct Solution<'p> {
    pub termination: Termination,
    /// Reported point: the final iterate, or its accepted rounding.
    pub x: Vec<f64>,
    /// Significant digits of the accepted rounding.
    pub rounded_digits: Option<u32>,
    /// Objectives of the final iterate.
    pub objectives: Objectives,
    /// `Q(x) - D` relative to `|D|` for the reported `x`.
    pub rel_gap: f64,
    /// Constraint violation of the reported `x`.
    pub max_violation: f64,
    pub passes: usize,
    pub elapsed: Duration,
    pub state: SolverState<'p>,
}

/// Rounds `v` to `digits` significant decimal digits; zero stays zero.
pub fn round_significant(v: f64, digits: u32) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{:.*e}", digits.saturating_sub(1) as usize, v)
        .parse()
        .expect("formatted float parses")
}

/// Result of a successful rounding attempt.
#[derive(Debug, Clone, PartialEq)]
pub struct Rounded {
    pub x: Vec<f64>,
    pub digits: u32,
    pub max_violation: f64,
    pub rel_gap: f64,
}

/// Rounds the iterate entrywise to `digits` significant figures and accepts the
/// result if it is feasible to `tol_con` and within `tol_gap` of the dual bound.
pub fn round_attempt(state: &SolverState<'_>, dual: f64, digits: u32, tol_con: f64, tol_gap: f64) -> Option<Rounded> {
    let p = state.problem();
    let x: Vec<f64> = state.x().iter().map(|&v| round_significant(v, digits)).collect();
    let viol = max_violation(p, &x, Some(tol_con));
    if viol > tol_con {
        return None;
    }
    let rel_gap = Objectives::relative_gap(p.qp_objective(&x), dual);
    if rel_gap.abs() > tol_gap {
        return None;
    }
    Some(Rounded {
        x,
        digits,
        max_violation: viol,
        rel_gap,
    })
}

/// Runs sweeps until the gap and violation tolerances are met, a rounding is
/// accepted, or `max_passes` is reached.
pub fn solve<'p>(problem: &'p Problem, cfg: &SolverConfig) -> Result<Solution<'p>> {
    solve_with(problem, cfg, |_, _| {})
}

/// [`solve`] with a callback after every pass, given the state and its objectives.
pub fn solve_with<'p>(
    problem: &'p Problem,
    cfg: &SolverConfig,
    mut on_pass: impl FnMut(&SolverState<'p>, &Objectives),
) -> Result<Solution<'p>> {
    cfg.validate()?;
    let start = Instant::now();
    let mut state = SolverState::new(problem);
    let mut rho = f64::INFINITY;
    let mut obj = state.objectives();
    for pass in 1..=cfg.max_passes {
        state.full_pass();
        obj = state.objectives();
        on_pass(&state, &obj);

        let near = obj.gap.abs() <= 10.0 * cfg.tol_gap;
        let last = pass == cfg.max_passes;
        if !(near || last || pass % cfg.full_check_period == 0) {
            continue;
        }
        rho = state.max_violation(if near && !last { Some(10.0 * cfg.tol_con) } else { None });
        if obj.gap.abs() <= cfg.tol_gap && rho <= cfg.tol_con {
            return Ok(finish(state, Termination::GapMet, None, obj, obj.gap, rho, start));
        }
        if near && rho <= 10.0 * cfg.tol_con {
            for &r in &cfg.round_digits {
                if let Some(rd) = round_attempt(&state, obj.dual, r, cfg.tol_con, cfg.tol_gap) {
                    let Rounded {
                        x,
                        digits,
                        max_violation,
                        rel_gap,
                    } = rd;
                    let mut sol = finish(state, Termination::Rounded, Some(digits), obj, rel_gap, max_violation, start);
                    sol.x = x;
                    return Ok(sol);
                }
            }
        }
    }
    Ok(finish(state, Termination::MaxPasses, None, obj, obj.gap, rho, start))
}

fn finish<'p>(
    state: SolverState<'p>,
    termination: Termination,
    rounded_digits: Option<u32>,
    objectives: Objectives,
    rel_gap: f64,
    max_violation: f64,
    start: Instant,
) -> Solution<'p> {
    Solution {
        termination,
        x: state.x().to_vec(),
        rounded_digits,
        objectives,
        rel_gap,
        max_violation,
        passes: state.passes(),
        elapsed: start.elapsed(),
        state,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_rounding() {
        assert_eq!(round_significant(0.333333341, 6), 0.333333);
        assert_eq!(round_significant(0.666666703, 6), 0.666667);
        assert_eq!(round_significant(-1234.5, 2), -1200.0);
        assert_eq!(round_significant(0.0, 3), 0.0);
        assert_eq!(round_significant(2.0e-7, 1), 2.0e-7);
    }

    #[test]
    fn config_validation() {
        assert!(SolverConfig::default().validate().is_ok());
        let bad = SolverConfig {
            round_digits: vec![3, 2],
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = SolverConfig {
            tol_gap: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
