use metricopt::graph::{Graph, SignedGraph};
use metricopt::oracle::{linear_relaxation, lp_simplex_small, qp_active_set, QP_MAX_ROWS};
use metricopt::problem::{
    build_correlation_clustering, build_max_cut, build_metric_nearness, build_modularity, build_sparsest_cut,
    ConstraintFamily, Dissimilarity, Problem, ProblemKind, ProblemMeta, VarLayout,
};
use metricopt::rng::{erdos_renyi, SplitMix64};
use metricopt::solver::{
    max_violation, round_attempt, round_significant, solve, DualStore, Objectives, SolverConfig, SolverState,
    Termination,
};

fn meta(n: usize) -> ProblemMeta {
    ProblemMeta {
        n,
        num_edges: 0,
        lambda: None,
        weight_floor: None,
        objective_sign: 1.0,
        objective_constant: 0.0,
    }
}

/// A problem whose unconstrained start `-gamma W^-1 c` is exactly `x0`.
fn starting_at(layout: VarLayout, x0: &[f64], w: &[f64], gamma: f64, families: Vec<ConstraintFamily>) -> Problem {
    let n = layout.n();
    let c = x0.iter().zip(w).map(|(x, w)| -x * w / gamma).collect();
    Problem::new(ProblemKind::MetricNearness, layout, c, w.to_vec(), gamma, families, meta(n)).unwrap()
}

fn one_triangle(x0: &[f64], w: &[f64]) -> Problem {
    starting_at(
        VarLayout::AllPairs { n: 3 },
        x0,
        w,
        1.0,
        vec![ConstraintFamily::TriangleAll { n: 3, shift: None }],
    )
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

#[test]
fn initial_point_sparsest_cut() {
    let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
    let p = build_sparsest_cut(&g, 0.25, 5.0).unwrap();
    let s = SolverState::new(&p);
    // Pairs (1,2) (1,3) (1,4) (2,3) (2,4) (3,4); edges are 1-2, 2-3, 3-4.
    assert_eq!(s.x(), &[-5.0, 0.0, 0.0, -5.0, 0.0, -5.0]);
}

#[test]
fn initial_point_metric_nearness() {
    let d = Dissimilarity::from_pairs(3, vec![0.5, 1.0, 2.0]).unwrap();
    let w = [1.0, 2.0, 4.0];
    let p = build_metric_nearness(&d, &w, 3.0).unwrap();
    let s = SolverState::new(&p);
    assert_eq!(s.x(), &[0.0, 0.0, 0.0, -3.0, -3.0, -3.0]);
}

#[test]
fn zero_cost_starts_at_origin() {
    let p = one_triangle(&[0.0; 3], &[1.0; 3]);
    assert_eq!(SolverState::new(&p).x(), &[0.0; 3]);
}

#[test]
fn triangle_projection_unit_weights() {
    let p = one_triangle(&[1.0, 0.25, 0.25], &[1.0; 3]);
    let mut s = SolverState::new(&p);
    let stats = s.full_pass();
    assert_eq!(stats.visits, 3);
    assert_eq!(stats.updates, 1);
    assert!(close(s.x(), &[5.0 / 6.0, 5.0 / 12.0, 5.0 / 12.0], 1e-15));
    assert_eq!(s.duals().len(), 1);
    assert_eq!(s.duals().entries()[0].t, 0);
    assert!((s.duals().entries()[0].y - 1.0 / 6.0).abs() < 1e-15);
    assert!(max_violation(&p, s.x(), None) < 1e-15);
}

#[test]
fn triangle_projection_weighted() {
    let p = one_triangle(&[1.0, 0.0, 0.0], &[1.0, 2.0, 2.0]);
    let mut s = SolverState::new(&p);
    s.full_pass();
    assert!(close(s.x(), &[0.5, 0.25, 0.25], 1e-15));
    assert!((s.duals().entries()[0].y - 0.5).abs() < 1e-15);
}

#[test]
fn satisfied_triangle_is_a_no_op() {
    let x0 = [0.2, 0.5, 0.5];
    let p = one_triangle(&x0, &[1.0; 3]);
    let mut s = SolverState::new(&p);
    let before: Vec<u64> = s.x().iter().map(|v| v.to_bits()).collect();
    let stats = s.full_pass();
    let after: Vec<u64> = s.x().iter().map(|v| v.to_bits()).collect();
    assert_eq!(before, after);
    assert_eq!(stats.updates, 0);
    assert!(s.duals().is_empty());
}

#[test]
fn coupling_projection() {
    let p = starting_at(
        VarLayout::PairsPlusSlack { n: 2 },
        &[0.8, 0.2],
        &[1.0, 1.0],
        1.0,
        vec![ConstraintFamily::CouplingAbs {
            pairs: 1,
            slack_offset: 1,
        }],
    );
    let mut s = SolverState::new(&p);
    s.full_pass();
    assert!(close(s.x(), &[0.5, 0.5], 1e-15));
    assert!((s.duals().entries()[0].y - 0.3).abs() < 1e-15);
}

#[test]
fn box_projection_clamps() {
    let p = starting_at(
        VarLayout::AllPairs { n: 2 },
        &[-0.4],
        &[1.0],
        1.0,
        vec![ConstraintFamily::Box {
            start: 0,
            len: 1,
            lo: 0.0,
            hi: f64::INFINITY,
        }],
    );
    let mut s = SolverState::new(&p);
    s.full_pass();
    assert_eq!(s.x(), &[0.0]);
    assert!((s.duals().entries()[0].y - 0.4).abs() < 1e-15);
}

#[test]
fn feasible_equality_is_untouched() {
    let p = starting_at(
        VarLayout::AllPairs { n: 3 },
        &[1.0; 3],
        &[1.0; 3],
        1.0,
        vec![ConstraintFamily::SumEq {
            start: 0,
            len: 3,
            target: 3.0,
        }],
    );
    let mut s = SolverState::new(&p);
    s.full_pass();
    assert_eq!(s.x(), &[1.0; 3]);
    assert!(s.duals().is_empty());
}

#[test]
fn equality_dual_can_be_negative() {
    // Start below the target: the multiplier of sum x <= n direction is negative.
    let p = starting_at(
        VarLayout::AllPairs { n: 3 },
        &[0.0; 3],
        &[1.0; 3],
        1.0,
        vec![ConstraintFamily::SumEq {
            start: 0,
            len: 3,
            target: 3.0,
        }],
    );
    let mut s = SolverState::new(&p);
    s.full_pass();
    assert!(close(s.x(), &[1.0; 3], 1e-15));
    assert_eq!(s.sum_eq_dual(), Some(-1.0));
}

#[test]
fn sparsest_cut_n3_pass_visits_seven() {
    let p = build_sparsest_cut(&Graph::complete(3), 1.0 / 3.0, 5.0).unwrap();
    let mut s = SolverState::new(&p);
    assert_eq!(s.full_pass().visits, 7);
}

#[test]
fn initial_objectives() {
    let p = build_sparsest_cut(&Graph::complete(3), 1.0 / 3.0, 5.0).unwrap();
    let mut s = SolverState::new(&p);
    let o = s.objectives();
    assert!((o.dual + 7.5).abs() < 1e-12);
    assert!((o.primal + 7.5).abs() < 1e-12);
    assert_eq!(o.gap, 0.0);
}

#[test]
fn oracle_pair_has_zero_gap() {
    let g = erdos_renyi(7, 0.5, 4);
    let g = metricopt::graph::preprocess(&g);
    let p = build_max_cut(&g, 5.0).unwrap();
    let qp = qp_active_set(&p, QP_MAX_ROWS).unwrap();
    let bty: f64 = p.constraints().map(|(t, r)| r.rhs * qp.y[t]).sum();
    let half_quad = 0.5 * p.quadratic_term(&qp.x) / p.gamma();
    let dual = -bty - half_quad;
    let gap = Objectives::relative_gap(p.qp_objective(&qp.x), dual);
    assert!(gap.abs() < 1e-9, "{gap}");
}

#[test]
fn dual_never_exceeds_primal_at_feasible_points() {
    let p = build_sparsest_cut(&Graph::complete(5), 0.2, 5.0).unwrap();
    let mut s = SolverState::new(&p);
    for _ in 0..50 {
        s.full_pass();
    }
    let d = s.objectives().dual;
    // Any feasible x: the uniform metric with sum n.
    let x = vec![0.5; 10];
    assert!(p.max_violation_naive(&x) < 1e-15);
    assert!(d <= p.qp_objective(&x));
}

#[test]
fn violation_of_single_triangle() {
    let p = one_triangle(&[0.0; 3], &[1.0; 3]);
    assert_eq!(max_violation(&p, &[0.5, 0.5, 0.5], None), 0.0);
    let x = [1.2, 0.5, 0.5];
    assert!((max_violation(&p, &x, None) - 0.2).abs() < 1e-15);
    assert_eq!(max_violation(&p, &x, None), p.max_violation_naive(&x));
    // Early exit still reports a violation above the threshold.
    assert!(max_violation(&p, &x, Some(0.1)) > 0.1);
}

#[test]
fn violation_matches_naive_scan() {
    let g = metricopt::graph::preprocess(&erdos_renyi(8, 0.5, 21));
    let p = build_sparsest_cut(&g, 1.0 / g.n() as f64, 5.0).unwrap();
    let mut rng = SplitMix64::new(5);
    for _ in 0..20 {
        let x: Vec<f64> = (0..p.num_vars()).map(|_| rng.next_f64()).collect();
        assert_eq!(max_violation(&p, &x, None), p.max_violation_naive(&x));
    }
}

#[test]
fn rounding_examples() {
    let x = [0.333333341, 0.333333329, 0.666666703];
    let r: Vec<f64> = x.iter().map(|&v| round_significant(v, 6)).collect();
    assert_eq!(r, vec![0.333333, 0.333333, 0.666667]);
}

#[test]
fn rounding_accepts_exact_optimum() {
    // Unconstrained minimizer already feasible: x0 is optimal and has 2 digits.
    let p = one_triangle(&[0.25, 0.5, 0.5], &[1.0; 3]);
    let mut s = SolverState::new(&p);
    s.full_pass();
    let d = s.objectives().dual;
    let r = round_attempt(&s, d, 2, 1e-8, 1e-4).unwrap();
    assert_eq!(r.x, vec![0.25, 0.5, 0.5]);
    assert!(r.rel_gap.abs() <= 1e-4);
}

#[test]
fn rounding_rejects_infeasible_point() {
    let sg = SignedGraph::new(3, vec![1.0; 3], vec![false, false, true]).unwrap();
    let p = build_correlation_clustering(&sg, 5.0).unwrap();
    let mut s = SolverState::new(&p);
    s.full_pass();
    let d = s.objectives().dual;
    assert!(round_attempt(&s, d, 2, 1e-8, 1e-4).is_none());
}

#[test]
fn complete_graph_solve() {
    let p = build_sparsest_cut(&Graph::complete(10), 0.1, 5.0).unwrap();
    let sol = solve(&p, &SolverConfig::default()).unwrap();
    assert!(sol.termination.converged());
    let lin = p.linear_objective(&sol.x);
    assert!((10.0 - 1e-6..=12.0).contains(&lin), "{lin}");
    // D bounds the regularized optimum, n + n / (5 (n - 1)) here.
    let qp_opt = 10.0 + 10.0 / 45.0;
    assert!(sol.objectives.dual <= qp_opt + 1e-9);
    assert!((sol.objectives.dual - qp_opt).abs() / qp_opt < 1e-4);
}

#[test]
fn triangle_cc_within_factor() {
    let sg = SignedGraph::new(3, vec![1.0; 3], vec![false, false, true]).unwrap();
    let p = build_correlation_clustering(&sg, 10.0).unwrap();
    let sol = solve(&p, &SolverConfig::default()).unwrap();
    assert!(sol.termination.converged());
    let lin = p.linear_objective(&sol.x);
    assert!((1.0 - 1e-6..=1.1).contains(&lin), "{lin}");
}

#[test]
fn max_passes_gives_valid_lower_bound() {
    let g = metricopt::graph::preprocess(&erdos_renyi(8, 0.5, 3));
    let p = build_sparsest_cut(&g, 1.0 / g.n() as f64, 5.0).unwrap();
    let cfg = SolverConfig {
        max_passes: 1,
        ..Default::default()
    };
    let sol = solve(&p, &cfg).unwrap();
    assert_eq!(sol.termination, Termination::MaxPasses);
    assert!(!sol.termination.converged());
    assert_eq!(sol.passes, 1);
    let opt = qp_active_set(&p, QP_MAX_ROWS).unwrap().objective;
    assert!(sol.objectives.dual <= opt + 1e-12);
    assert!(sol.max_violation.is_finite());
}

#[test]
fn store_holds_exactly_the_active_projections() {
    let g = metricopt::graph::preprocess(&erdos_renyi(9, 0.4, 11));
    let p = build_sparsest_cut(&g, 1.0 / g.n() as f64, 5.0).unwrap();
    let mut s = SolverState::new(&p);
    for _ in 0..20 {
        let mut last_nonzero = vec![false; p.num_constraints()];
        s.full_pass_with(&mut |t: u64, _: f64, y: f64, _: &[f64]| last_nonzero[t as usize] = y != 0.0);
        let stored: Vec<usize> = s.duals().entries().iter().map(|e| e.t as usize).collect();
        let expected: Vec<usize> = (0..p.num_constraints()).filter(|&t| last_nonzero[t]).collect();
        assert_eq!(stored, expected);
        assert!(s.duals().entries().iter().all(|e| e.y != 0.0));
    }
}

#[test]
fn incremental_bty_matches_recomputation() {
    let g = metricopt::graph::preprocess(&erdos_renyi(9, 0.4, 12));
    let p = build_sparsest_cut(&g, 1.0 / g.n() as f64, 5.0).unwrap();
    let mut s = SolverState::new(&p);
    for _ in 0..100 {
        s.full_pass();
    }
    assert!((s.bty() - s.recompute_bty()).abs() < 1e-10);
}

#[test]
fn dual_store_cursor_semantics() {
    let mut d = DualStore::new();
    d.push(2, 0.5);
    d.push(7, 1.5);
    d.swap();
    assert_eq!(d.take(1), 0.0);
    assert_eq!(d.take(2), 0.5);
    d.push(2, 0.25);
    let mid = d.to_dense_mid_pass(8);
    assert_eq!(mid[2], 0.25);
    assert_eq!(mid[7], 1.5);
    assert_eq!(d.take(7), 1.5);
    d.swap();
    assert_eq!(d.to_dense(8)[2], 0.25);
    assert_eq!(d.len(), 1);
}

#[test]
fn other_kinds_match_oracle() {
    let mut rng = SplitMix64::new(9);
    let n = 6;
    let d: Vec<f64> = (0..15).map(|_| rng.next_f64()).collect();
    let w: Vec<f64> = (0..15).map(|_| 0.5 + rng.next_f64()).collect();
    let mn = build_metric_nearness(&Dissimilarity::from_pairs(n, d).unwrap(), &w, 2.0).unwrap();
    let g = metricopt::graph::preprocess(&erdos_renyi(8, 0.4, 5));
    let md = build_modularity(&g, 5.0, None).unwrap();
    let cfg = SolverConfig {
        tol_gap: 1e-10,
        tol_con: 1e-11,
        max_passes: 100_000,
        ..Default::default()
    };
    for p in [&mn, &md] {
        let exact = qp_active_set(p, QP_MAX_ROWS).unwrap().objective;
        let sol = solve(p, &cfg).unwrap();
        assert!(sol.termination.converged(), "{:?}", p.kind());
        let err = (p.qp_objective(&sol.x) - exact).abs() / exact.abs();
        assert!(err <= 1e-6, "{:?}: {err}", p.kind());
    }
}

#[test]
fn qp_tends_to_lp_as_gamma_grows() {
    let sg = SignedGraph::new(4, vec![1.0, 2.0, 1.0, 1.5, 1.0, 2.0], vec![false, true, false, true, false, false])
        .unwrap();
    let p = build_correlation_clustering(&sg, 1.0).unwrap();
    let lp = lp_simplex_small(&linear_relaxation(&p)).unwrap().value;
    let mut prev = f64::INFINITY;
    for gamma in [1.0, 10.0, 100.0, 1000.0] {
        let q = p.with_gamma(gamma).unwrap();
        let lin = q.linear_objective(&qp_active_set(&q, QP_MAX_ROWS).unwrap().x);
        assert!(lin >= lp - 1e-9 && lin <= lp * (1.0 + 1.0 / gamma) + 1e-9);
        assert!(lin <= prev + 1e-9);
        prev = lin;
    }
}
