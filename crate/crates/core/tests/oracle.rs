use metricopt::graph::{jaccard_signed_graph, preprocess, Graph, SignedGraph};
use metricopt::oracle::{
    ilp, kkt_residual, linear_relaxation, lp_simplex_small, qp_active_set, solve_dense, solve_diagonal_qp, DenseHildreth,
    DenseLp, Sense, QP_MAX_ROWS,
};
use metricopt::problem::{
    build_cluster_deletion, build_correlation_clustering, build_sparsest_cut, ConstraintRow,
};
use metricopt::rng::erdos_renyi;
use metricopt::solver::SolverState;
use metricopt::Error;

fn le(entries: &[(usize, f64)], rhs: f64) -> ConstraintRow {
    ConstraintRow {
        entries: entries.to_vec(),
        rhs,
        equality: false,
    }
}

#[test]
fn dense_solve_with_pivoting() {
    let m = vec![0.0, 2.0, 1.0, 1.0];
    let x = solve_dense(m, vec![4.0, 3.0], 2).unwrap();
    assert!((x[0] - 1.0).abs() < 1e-15 && (x[1] - 2.0).abs() < 1e-15);
    assert!(solve_dense(vec![1.0, 2.0, 2.0, 4.0], vec![1.0, 2.0], 2).is_none());
}

#[test]
fn unconstrained_qp_is_stationary_point() {
    let sol = solve_diagonal_qp(&[2.0, 0.5], &[1.0, -1.0], &[]).unwrap();
    assert_eq!(sol.x, vec![-0.5, 2.0]);
    assert!(sol.y.is_empty());
}

#[test]
fn single_row_qp_is_weighted_projection() {
    // min (x0^2 + 2 x1^2)/2 - x0 - 2 x1  s.t. x0 + x1 <= 1; start (1, 1).
    let h = [1.0, 2.0];
    let c = [-1.0, -2.0];
    let sol = solve_diagonal_qp(&h, &c, &[le(&[(0, 1.0), (1, 1.0)], 1.0)]).unwrap();
    // Projection of (1, 1) in the H norm: theta = 1 / (1 + 1/2), x = (1 - 2/3, 1 - 1/3).
    assert!((sol.x[0] - 1.0 / 3.0).abs() < 1e-14);
    assert!((sol.x[1] - 2.0 / 3.0).abs() < 1e-14);
    assert!((sol.y[0] - 2.0 / 3.0).abs() < 1e-14);
}

#[test]
fn triangle_cc_qp_matches_long_dykstra() {
    let sg = SignedGraph::new(3, vec![1.0; 3], vec![false, false, true]).unwrap();
    let p = build_correlation_clustering(&sg, 10.0).unwrap();
    let exact = qp_active_set(&p, QP_MAX_ROWS).unwrap();
    let mut s = SolverState::new(&p);
    for _ in 0..5000 {
        s.full_pass();
    }
    assert!((p.qp_objective(s.x()) - exact.objective).abs() < 1e-8);
}

#[test]
fn qp_multipliers_satisfy_kkt() {
    for seed in 0..5 {
        let g = preprocess(&erdos_renyi(8, 0.4, seed));
        let sg = jaccard_signed_graph(&g, 0.05, 0.01).unwrap();
        let p = build_correlation_clustering(&sg, 5.0).unwrap();
        let sol = qp_active_set(&p, QP_MAX_ROWS).unwrap();
        assert!(kkt_residual(&p, &sol.x, &sol.y) < 1e-9);
        assert!(p.max_violation_naive(&sol.x) < 1e-9);
        for (t, r) in p.constraints() {
            if !r.equality {
                assert!(sol.y[t] >= 0.0);
            }
            assert!((sol.y[t] * (r.eval(&sol.x) - r.rhs)).abs() < 1e-9);
        }
    }
}

#[test]
fn qp_guard() {
    let p = build_sparsest_cut(&Graph::complete(30), 1.0 / 30.0, 5.0).unwrap();
    assert!(matches!(qp_active_set(&p, QP_MAX_ROWS), Err(Error::GuardExceeded(_))));
}

#[test]
fn large_gamma_sandwich() {
    let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
    let base = build_cluster_deletion(&g, 1.0).unwrap();
    let lp = lp_simplex_small(&linear_relaxation(&base)).unwrap().value;
    for gamma in [1e3, 1e4] {
        let p = base.with_gamma(gamma).unwrap();
        let lin = p.linear_objective(&qp_active_set(&p, QP_MAX_ROWS).unwrap().x);
        assert!((lin - lp).abs() <= lp / (2.0 * gamma) + 1e-9);
    }
}

#[test]
fn simplex_equality_with_bounds() {
    let mut lp = DenseLp::new(vec![2.0, 1.0], true);
    lp.add_row(vec![1.0, 1.0], Sense::Eq, 2.0);
    lp.set_bounds(0, 0.0, 1.5);
    lp.set_bounds(1, 0.0, 1.5);
    let sol = lp_simplex_small(&lp).unwrap();
    assert!((sol.x[0] - 1.5).abs() < 1e-12 && (sol.x[1] - 0.5).abs() < 1e-12);
    assert!((sol.value - 3.5).abs() < 1e-12);
}

#[test]
fn simplex_infeasible_and_unbounded() {
    let mut lp = DenseLp::new(vec![1.0, 1.0], true);
    lp.add_row(vec![1.0, 1.0], Sense::Ge, 3.0);
    lp.set_bounds(0, 0.0, 1.0);
    lp.set_bounds(1, 0.0, 1.0);
    assert!(matches!(lp_simplex_small(&lp), Err(Error::Infeasible)));

    let mut lp = DenseLp::new(vec![1.0, 0.0], true);
    lp.add_row(vec![0.0, 1.0], Sense::Le, 1.0);
    assert!(matches!(lp_simplex_small(&lp), Err(Error::Unbounded)));
}

#[test]
fn simplex_free_variable_bounded_by_rows() {
    // max x0 - x1 with x0 free, x1 >= 0 and x0 - x1 <= 1.
    let mut lp = DenseLp::new(vec![1.0, -1.0], true);
    lp.set_bounds(0, f64::NEG_INFINITY, f64::INFINITY);
    lp.add_row(vec![1.0, -1.0], Sense::Le, 1.0);
    assert!((lp_simplex_small(&lp).unwrap().value - 1.0).abs() < 1e-12);
}

#[test]
fn simplex_free_and_mirrored_variables() {
    // min x0 - x1 with x0 free, x1 <= 2 (no lower bound), x0 >= x1 - 3, x0 + x1 >= -4.
    let mut lp = DenseLp::new(vec![1.0, -1.0], false);
    lp.set_bounds(0, f64::NEG_INFINITY, f64::INFINITY);
    lp.set_bounds(1, f64::NEG_INFINITY, 2.0);
    lp.add_row(vec![1.0, -1.0], Sense::Ge, -3.0);
    lp.add_row(vec![1.0, 1.0], Sense::Ge, -4.0);
    let sol = lp_simplex_small(&lp).unwrap();
    assert!((sol.value + 3.0).abs() < 1e-12);
    assert!(sol.x[0] - sol.x[1] >= -3.0 - 1e-12 && sol.x[0] + sol.x[1] >= -4.0 - 1e-12);
}

#[test]
fn brute_force_examples() {
    let sg = SignedGraph::new(3, vec![1.0; 3], vec![false, false, true]).unwrap();
    assert_eq!(ilp::correlation_clustering(&sg).unwrap().value, 1.0);
    let sc = ilp::sparsest_cut(&Graph::complete(4), 1).unwrap();
    assert_eq!(sc.value, 4.0);
    assert_eq!(ilp::max_cut(&Graph::path(2)).unwrap().value, 1.0);
    let cd = ilp::cluster_deletion(&Graph::path(3)).unwrap();
    assert_eq!(cd.value, 1.0);
}

#[test]
fn brute_force_guards() {
    assert!(matches!(
        ilp::cluster_deletion(&Graph::complete(11)),
        Err(Error::GuardExceeded(_))
    ));
    assert!(matches!(ilp::max_cut(&Graph::complete(19)), Err(Error::GuardExceeded(_))));
    assert!(ilp::max_cut(&Graph::complete(18)).is_ok());
}

#[test]
fn relaxations_bound_discrete_optima() {
    for seed in 0..8 {
        let g = preprocess(&erdos_renyi(8, 0.45, 40 + seed));
        if g.n() < 3 {
            continue;
        }
        let cd = build_cluster_deletion(&g, 1.0).unwrap();
        let lp = lp_simplex_small(&linear_relaxation(&cd)).unwrap().value;
        assert!(lp <= ilp::cluster_deletion(&g).unwrap().value + 1e-9);

        let sc = build_sparsest_cut(&g, 0.5, 1.0).unwrap();
        let lp = lp_simplex_small(&linear_relaxation(&sc)).unwrap().value;
        assert!(lp <= ilp::sparsest_cut(&g, 1).unwrap().value + 1e-9);

        let sg = jaccard_signed_graph(&g, 0.05, 0.01).unwrap();
        let cc = build_correlation_clustering(&sg, 1.0).unwrap();
        let lp = lp_simplex_small(&linear_relaxation(&cc)).unwrap().value;
        assert!(lp <= ilp::correlation_clustering(&sg).unwrap().value + 1e-9);
    }
}

#[test]
fn hildreth_matches_projection_solver() {
    let g = preprocess(&erdos_renyi(7, 0.5, 8));
    let p = build_sparsest_cut(&g, 1.0 / g.n() as f64, 5.0).unwrap();
    let mut s = SolverState::new(&p);
    let mut h = DenseHildreth::new(&p);
    assert_eq!(h.rows().len(), p.num_constraints());
    for _ in 0..100 {
        s.full_pass();
        h.pass();
        let y = s.dual_vector();
        assert!(h.x.iter().zip(s.x()).all(|(a, b)| (a - b).abs() <= 1e-12));
        assert!(h.y.iter().zip(&y).all(|(a, b)| (a - b).abs() <= 1e-12));
    }
}
