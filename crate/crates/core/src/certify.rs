//! Approximation guarantees and certificates for solved problems.
//!
//! The regularized optimum `x_hat` is compared to the LP optimum `x*` in three ways:
//!
//! * a-priori factors depending only on `gamma` (and `lambda`), valid when the
//!   LP optimum lies in a known box and costs are positive;
//! * the ratio `R = x'Wx / (2 gamma c'x)`, which sharpens `1 + A` to `(1 + A)/(1 + R)`;
//! * a perturbed-dual lower bound on `c'x*`: the duals `y_hat` are feasible for a
//!   slightly perturbed LP, and a small LP over a region known to contain `x*`
//!   bounds the perturbation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{lp_simplex_small, DenseLp, Sense};
use crate::problem::{Problem, ProblemKind};
use crate::solver::{Objectives, Solution, SolverState};

/// A-priori factor `1 + A` of the regularized optimum against the LP (or, for
/// sparsest cut, against the best cut score). `None` where no guarantee applies.
pub fn apriori_factor(p: &Problem) -> Option<f64> {
    let g = p.gamma();
    match p.kind() {
        ProblemKind::ClusterDeletion => Some(1.0 + 1.0 / (2.0 * g)),
        ProblemKind::CorrelationClustering => Some(1.0 + 1.0 / g),
        ProblemKind::MetricNearness => {
            // The CC argument needs 0/1 dissimilarities.
            let binary = p.distances()?.iter().all(|&d| d == 0.0 || d == 1.0);
            binary.then(|| 1.0 + 1.0 / g)
        }
        ProblemKind::SparsestCut => {
            let lambda = p.meta().lambda?;
            Some(1.0 + (1.0 + lambda * p.meta().n as f64) / (2.0 * g))
        }
        ProblemKind::MaxCut | ProblemKind::Modularity => None,
    }
}

/// `R = x'Wx / (2 gamma c'x)`. Zero at `x = 0`; `None` when `c'x` is zero but `x` is not.
pub fn aposteriori_ratio(p: &Problem, x: &[f64]) -> Option<f64> {
    let quad = p.quadratic_term(x);
    if quad == 0.0 {
        return Some(0.0);
    }
    let lin = p.linear_objective(x);
    if lin == 0.0 || !lin.is_finite() {
        return None;
    }
    Some(quad / (2.0 * p.gamma() * lin))
}

/// `(1 + A) / (1 + R)`, if both parts are defined.
pub fn improved_factor(p: &Problem, x: &[f64]) -> Option<f64> {
    let a = apriori_factor(p)?;
    let r = aposteriori_ratio(p, x)?;
    Some(a / (1.0 + r))
}

/// A set known to contain an optimal LP solution: per-variable bounds plus an
/// optional constraint on the sum of all variables.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub sum: Option<f64>,
}

impl Region {
    pub fn boxed(lower: Vec<f64>, upper: Vec<f64>) -> Self {
        Region { lower, upper, sum: None }
    }
}

/// The region used by default for each problem kind.
///
/// * sparsest cut: `sum x = n`, `0 <= x <= n/(n-1)`;
/// * shifted (`y = x - d`) forms: `-d <= y <= 1 - d`, `0 <= m <= 1`; only
///   valid for 0/1 dissimilarities, otherwise `None`;
/// * everything else: `0 <= x <= 1`.
pub fn default_region(p: &Problem) -> Option<Region> {
    let nv = p.num_vars();
    match p.kind() {
        ProblemKind::SparsestCut => {
            let n = p.meta().n as f64;
            Some(Region {
                lower: vec![0.0; nv],
                upper: vec![n / (n - 1.0); nv],
                sum: Some(n),
            })
        }
        ProblemKind::CorrelationClustering | ProblemKind::MetricNearness => {
            let d = p.distances()?;
            if !d.iter().all(|&v| v == 0.0 || v == 1.0) {
                return None;
            }
            let mut lower: Vec<f64> = d.iter().map(|v| -v).collect();
            let mut upper: Vec<f64> = d.iter().map(|v| 1.0 - v).collect();
            lower.extend(std::iter::repeat(0.0).take(d.len()));
            upper.extend(std::iter::repeat(1.0).take(d.len()));
            Some(Region::boxed(lower, upper))
        }
        ProblemKind::ClusterDeletion | ProblemKind::MaxCut | ProblemKind::Modularity => {
            Some(Region::boxed(vec![0.0; nv], vec![1.0; nv]))
        }
    }
}

/// Lower bound on the LP optimum `c'x*` from the solver's primal-dual pair:
/// `-b'y - p'x~` with `p = W_g x` and `x~` maximizing `p'x` over `region`
/// intersected with `c'x <= c'cap`. `cap` should be a feasible point (its
/// objective then bounds `c'x*` from above); if the capped LP is infeasible the
/// cap is dropped, which only weakens the bound.
///
/// The identity behind the bound assumes `c + A'y = -p` exactly. The returned
/// value is lowered by the stationarity residual times the largest l1 norm in
/// the region, and by a floating point allowance, so it stays a valid bound.
pub fn perturbed_dual_bound(p: &Problem, state: &SolverState<'_>, region: &Region, cap: &[f64]) -> Result<f64> {
    let nv = p.num_vars();
    if region.lower.len() != nv || region.upper.len() != nv {
        return Err(Error::input("region does not match the variable count"));
    }
    let phat: Vec<f64> = state
        .x()
        .iter()
        .zip(p.weight())
        .map(|(x, w)| w * x / p.gamma())
        .collect();
    let build = |with_cap: bool| {
        let mut lp = DenseLp::new(phat.clone(), true);
        lp.lower.clone_from(&region.lower);
        lp.upper.clone_from(&region.upper);
        if let Some(s) = region.sum {
            lp.add_row(vec![1.0; nv], Sense::Eq, s);
        }
        if with_cap {
            lp.add_row(p.cost().to_vec(), Sense::Le, p.linear_objective(cap));
        }
        lp
    };
    let tilde = match lp_simplex_small(&build(true)) {
        Ok(s) => s,
        Err(Error::Infeasible) => lp_simplex_small(&build(false))?,
        Err(e) => return Err(e),
    };
    let residual = state.stationarity_residual().iter().fold(0.0f64, |m, r| m.max(r.abs()));
    let l1: f64 = region
        .lower
        .iter()
        .zip(&region.upper)
        .map(|(lo, hi)| lo.abs().max(hi.abs()))
        .sum();
    let bty = state.recompute_bty();
    let slack = residual * l1 + 64.0 * f64::EPSILON * (bty.abs() + tilde.value.abs());
    Ok(-bty - tilde.value - slack)
}

/// Perturbed-dual bound for sparsest cut with its default region.
pub fn sc_lower_bound(p: &Problem, state: &SolverState<'_>, cap: &[f64]) -> Result<f64> {
    if p.kind() != ProblemKind::SparsestCut {
        return Err(Error::param("sc_lower_bound needs a sparsest cut problem"));
    }
    let region = default_region(p).expect("sparsest cut always has a region");
    perturbed_dual_bound(p, state, &region, cap)
}

/// Everything known about a solved instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    /// `D(y)`, a lower bound on the regularized optimum.
    pub dual_lower_bound: f64,
    /// `Q(x)` at the reported point.
    pub primal_value: f64,
    /// `c'x` at the reported point (minimization form).
    pub linear_value: f64,
    /// Objective of the original problem at the reported point.
    pub reported_value: f64,
    /// `(Q(x) - D) / |D|`
    pub rel_gap: f64,
    pub max_violation: f64,
    /// Incrementally tracked `b'y` minus the value recomputed from the stored duals.
    pub bty_drift: f64,
    /// `||W_g x + c + A'y||_inf` at the final iterate.
    pub stationarity_residual: f64,
    /// Lower bound on the LP optimum `c'x*` (minimization form).
    pub lp_lower_bound: Option<f64>,
    pub apriori_factor: Option<f64>,
    pub aposteriori_ratio: Option<f64>,
    pub aposteriori_factor: Option<f64>,
    /// `c'x / lp_lower_bound` when both are positive.
    pub lp_bound_factor: Option<f64>,
    pub notes: Vec<String>,
}

/// Assembles the certificate for a finished solve.
pub fn certify(p: &Problem, sol: &Solution<'_>) -> Certificate {
    let x = &sol.x;
    let state = &sol.state;
    let mut notes = Vec::new();
    let dual = sol.objectives.dual;
    let primal = p.qp_objective(x);
    let linear = p.linear_objective(x);
    let recomputed = state.recompute_bty();

    let apriori = apriori_factor(p);
    match p.kind() {
        ProblemKind::SparsestCut if apriori.is_some() => notes.push(
            "apriori factor bounds c'x against the minimum sparsest cut score, assuming both sides of an optimal cut have at least 2 nodes".into(),
        ),
        ProblemKind::ClusterDeletion | ProblemKind::CorrelationClustering | ProblemKind::MetricNearness
            if apriori.is_some() =>
        {
            notes.push("apriori factor bounds c'x against the LP optimum".into())
        }
        ProblemKind::MetricNearness => notes.push("no apriori factor: dissimilarities are not all 0/1".into()),
        ProblemKind::MaxCut | ProblemKind::Modularity => {
            notes.push("no apriori factor: costs are not all positive".into())
        }
        _ => {}
    }

    let lp_lower_bound = match default_region(p) {
        Some(region) => match perturbed_dual_bound(p, state, &region, x) {
            Ok(b) => Some(b),
            Err(e) => {
                notes.push(format!("no LP lower bound: {e}"));
                None
            }
        },
        None => {
            notes.push("no LP lower bound: no region known to contain the LP optimum".into());
            None
        }
    };
    if matches!(p.kind(), ProblemKind::MaxCut | ProblemKind::Modularity) && lp_lower_bound.is_some() {
        notes.push("lp_lower_bound is in minimization form; the maximization LP value is at most its reported transform".into());
    }
    let lp_bound_factor = match lp_lower_bound {
        Some(lb) if lb > 0.0 && linear > 0.0 => Some(linear / lb),
        _ => None,
    };
    let ratio = aposteriori_ratio(p, x);
    Certificate {
        dual_lower_bound: dual,
        primal_value: primal,
        linear_value: linear,
        reported_value: p.to_reported(linear),
        rel_gap: Objectives::relative_gap(primal, dual),
        max_violation: sol.max_violation,
        bty_drift: state.bty() - recomputed,
        stationarity_residual: state.stationarity_residual().iter().fold(0.0, |m: f64, r| m.max(r.abs())),
        lp_lower_bound,
        apriori_factor: apriori,
        aposteriori_ratio: ratio,
        aposteriori_factor: improved_factor(p, x),
        lp_bound_factor,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::problem::{build_cluster_deletion, build_max_cut, build_sparsest_cut};

    #[test]
    fn apriori_values() {
        let cd = build_cluster_deletion(&Graph::complete(3), 5.0).unwrap();
        assert!((apriori_factor(&cd).unwrap() - 1.1).abs() < 1e-15);
        let sc = build_sparsest_cut(&Graph::complete(10), 0.1, 5.0).unwrap();
        assert!((apriori_factor(&sc).unwrap() - 1.2).abs() < 1e-15);
        let mc = build_max_cut(&Graph::complete(3), 5.0).unwrap();
        assert_eq!(apriori_factor(&mc), None);
    }

    #[test]
    fn ratio_for_x_equal_c() {
        // W = I, gamma = 1, x = c  =>  R = c'c / (2 c'c) = 1/2
        let cd = build_cluster_deletion(&Graph::complete(3), 1.0).unwrap();
        let x = cd.cost().to_vec();
        assert_eq!(aposteriori_ratio(&cd, &x), Some(0.5));
        assert_eq!(aposteriori_ratio(&cd, &[0.0; 3]), Some(0.0));
        let mc = build_max_cut(&Graph::path(3), 1.0).unwrap();
        // c'x = 0 with x != 0
        assert_eq!(aposteriori_ratio(&mc, &[0.0, 1.0, 0.0]), None);
    }
}
