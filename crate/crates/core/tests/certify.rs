use metricopt::certify::{
    aposteriori_ratio, apriori_factor, certify, default_region, improved_factor, perturbed_dual_bound,
    sc_lower_bound, Region,
};
use metricopt::graph::{preprocess, Graph, SignedGraph};
use metricopt::oracle::{linear_relaxation, lp_simplex_small};
use metricopt::problem::{
    build_cluster_deletion, build_correlation_clustering, build_max_cut, build_metric_nearness, build_modularity,
    build_sparsest_cut, Dissimilarity,
};
use metricopt::rng::erdos_renyi;
use metricopt::solver::{solve, SolverConfig};
use metricopt::Error;

fn triangle_cc(gamma: f64) -> metricopt::problem::Problem {
    let sg = SignedGraph::new(3, vec![1.0; 3], vec![false, false, true]).unwrap();
    build_correlation_clustering(&sg, gamma).unwrap()
}

#[test]
fn apriori_factor_values() {
    let cd = build_cluster_deletion(&Graph::complete(4), 5.0).unwrap();
    assert!((apriori_factor(&cd).unwrap() - 1.1).abs() < 1e-15);
    assert_eq!(apriori_factor(&triangle_cc(1.0)), Some(2.0));
    let sc = build_sparsest_cut(&Graph::complete(8), 1.0 / 8.0, 5.0).unwrap();
    assert!((apriori_factor(&sc).unwrap() - 1.2).abs() < 1e-15);
    let mc = build_max_cut(&Graph::complete(4), 5.0).unwrap();
    assert_eq!(apriori_factor(&mc), None);
    let md = build_modularity(&Graph::complete(4), 5.0, None).unwrap();
    assert_eq!(apriori_factor(&md), None);
}

#[test]
fn metric_nearness_factor_needs_binary_distances() {
    let binary = Dissimilarity::from_pairs(3, vec![1.0, 0.0, 0.0]).unwrap();
    let p = build_metric_nearness(&binary, &[1.0; 3], 4.0).unwrap();
    assert_eq!(apriori_factor(&p), Some(1.25));
    assert!(default_region(&p).is_some());
    let real = Dissimilarity::from_pairs(3, vec![0.3, 0.0, 0.0]).unwrap();
    let p = build_metric_nearness(&real, &[1.0; 3], 4.0).unwrap();
    assert_eq!(apriori_factor(&p), None);
    assert!(default_region(&p).is_none());
}

#[test]
fn ratio_at_zero_leaves_factor_unchanged() {
    let cd = build_cluster_deletion(&Graph::complete(3), 5.0).unwrap();
    assert_eq!(aposteriori_ratio(&cd, &[0.0; 3]), Some(0.0));
    assert_eq!(improved_factor(&cd, &[0.0; 3]), apriori_factor(&cd));
}

#[test]
fn ratio_with_unit_weights_and_x_equal_c() {
    let cd = build_cluster_deletion(&Graph::complete(3), 1.0).unwrap();
    let x = cd.cost().to_vec();
    assert_eq!(aposteriori_ratio(&cd, &x), Some(0.5));
}

#[test]
fn integral_cc_solution_collapses_factor() {
    for gamma in [1.0, 5.0, 20.0] {
        let p = triangle_cc(gamma);
        // Everything in one cluster: x = 0, so y = -d and m = d.
        let x = [0.0, 0.0, -1.0, 0.0, 0.0, 1.0];
        let r = aposteriori_ratio(&p, &x).unwrap();
        assert!((r - 1.0 / gamma).abs() < 1e-15);
        assert!((improved_factor(&p, &x).unwrap() - 1.0).abs() < 1e-15);
    }
}

#[test]
fn degenerate_ratio_is_not_applicable() {
    let mc = build_max_cut(&Graph::path(3), 1.0).unwrap();
    // c'x = 0 but x != 0: the only non-edge carries the mass.
    assert_eq!(aposteriori_ratio(&mc, &[0.0, 1.0, 0.0]), None);
    assert_eq!(improved_factor(&mc, &[0.0, 1.0, 0.0]), None);
}

#[test]
fn k4_bound_is_close_and_valid() {
    let p = build_sparsest_cut(&Graph::complete(4), 0.25, 5.0).unwrap();
    let lp = lp_simplex_small(&linear_relaxation(&p)).unwrap().value;
    assert!((lp - 4.0).abs() < 1e-12);
    let sol = solve(&p, &SolverConfig::default()).unwrap();
    let bound = sc_lower_bound(&p, &sol.state, &sol.x).unwrap();
    assert!(bound <= lp + 1e-8);
    assert!(bound >= 0.95 * lp);
}

#[test]
fn sc_bound_below_lp_on_small_graphs() {
    for seed in 0..6 {
        let g = preprocess(&erdos_renyi(6, 0.6, seed));
        if g.n() < 3 {
            continue;
        }
        let p = build_sparsest_cut(&g, 1.0 / g.n() as f64, 5.0).unwrap();
        let lp = lp_simplex_small(&linear_relaxation(&p)).unwrap().value;
        let sol = solve(&p, &SolverConfig::default()).unwrap();
        let bound = sc_lower_bound(&p, &sol.state, &sol.x).unwrap();
        assert!(bound <= lp + 1e-8, "seed {seed}: {bound} > {lp}");
    }
}

#[test]
fn small_lp_only_tightens_the_box_bound() {
    let g = preprocess(&erdos_renyi(7, 0.5, 3));
    let n = g.n() as f64;
    let p = build_sparsest_cut(&g, 1.0 / n, 5.0).unwrap();
    let sol = solve(&p, &SolverConfig::default()).unwrap();
    let tight = sc_lower_bound(&p, &sol.state, &sol.x).unwrap();
    let nv = p.num_vars();
    let box_only = Region::boxed(vec![0.0; nv], vec![n / (n - 1.0); nv]);
    // A far-away cap point forces the capped LP to drop its cap, so this is the box-only bound.
    let loose = perturbed_dual_bound(&p, &sol.state, &box_only, &vec![n; nv]).unwrap();
    assert!(tight >= loose - 1e-12);
}

#[test]
fn region_size_is_checked() {
    let p = build_sparsest_cut(&Graph::complete(4), 0.25, 5.0).unwrap();
    let sol = solve(&p, &SolverConfig::default()).unwrap();
    let bad = Region::boxed(vec![0.0; 2], vec![1.0; 2]);
    assert!(perturbed_dual_bound(&p, &sol.state, &bad, &sol.x).is_err());
    let cd = build_cluster_deletion(&Graph::complete(3), 5.0).unwrap();
    assert!(matches!(sc_lower_bound(&cd, &sol.state, &sol.x), Err(Error::InvalidParameter(_))));
}

#[test]
fn certificate_for_cluster_deletion() {
    let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]);
    let p = build_cluster_deletion(&g, 5.0).unwrap();
    let sol = solve(&p, &SolverConfig::default()).unwrap();
    let c = certify(&p, &sol);
    let lp = lp_simplex_small(&linear_relaxation(&p)).unwrap().value;
    assert!(c.dual_lower_bound <= c.primal_value + 1e-12);
    assert!(c.lp_lower_bound.unwrap() <= lp + 1e-8);
    assert!(c.linear_value >= lp - 1e-6);
    assert!(c.linear_value <= c.apriori_factor.unwrap() * lp + 1e-6);
    assert!(c.aposteriori_factor.unwrap() <= c.apriori_factor.unwrap());
    assert!(c.bty_drift.abs() < 1e-10);
    assert!(c.stationarity_residual < 1e-12);
    assert_eq!(c.reported_value, c.linear_value);
}

#[test]
fn certificate_for_max_cut_has_no_factor() {
    let p = build_max_cut(&Graph::complete(4), 5.0).unwrap();
    let sol = solve(&p, &SolverConfig::default()).unwrap();
    let c = certify(&p, &sol);
    assert_eq!(c.apriori_factor, None);
    assert_eq!(c.aposteriori_factor, None);
    assert!(c.notes.iter().any(|n| n.contains("no apriori factor")));
    assert_eq!(c.reported_value, -c.linear_value);
    // The minimization-form bound is below -LP_max.
    let lp = lp_simplex_small(&linear_relaxation(&p)).unwrap().value;
    assert!(c.lp_lower_bound.unwrap() <= lp + 1e-8);
}

#[test]
fn certificate_for_real_metric_nearness_has_no_bound() {
    let d = Dissimilarity::from_pairs(4, vec![0.2, 1.5, 0.1, 0.3, 0.9, 0.4]).unwrap();
    let p = build_metric_nearness(&d, &[1.0; 6], 5.0).unwrap();
    let sol = solve(&p, &SolverConfig::default()).unwrap();
    let c = certify(&p, &sol);
    assert_eq!(c.lp_lower_bound, None);
    assert_eq!(c.lp_bound_factor, None);
    assert!(c.notes.iter().any(|n| n.contains("no LP lower bound")));
}
