//! Cross-checks the projection solver against the dense reference solvers on
//! small random instances of every kind.

use metricopt::graph::{jaccard_signed_graph, preprocess};
use metricopt::oracle::{linear_relaxation, lp_simplex_small, qp_active_set, QP_MAX_ROWS};
use metricopt::problem::{
    build_cluster_deletion, build_correlation_clustering, build_max_cut, build_modularity, build_sparsest_cut,
};
use metricopt::rng::erdos_renyi;
use metricopt::solver::{solve, SolverConfig};

fn main() {
    let cfg = SolverConfig {
        tol_gap: 1e-10,
        tol_con: 1e-11,
        max_passes: 100_000,
        ..Default::default()
    };
    for seed in 0..5 {
        let g = preprocess(&erdos_renyi(9, 0.4, seed));
        let sg = jaccard_signed_graph(&g, 0.05, 0.01).unwrap();
        let problems = [
            build_correlation_clustering(&sg, 5.0).unwrap(),
            build_sparsest_cut(&g, 1.0 / g.n() as f64, 5.0).unwrap(),
            build_cluster_deletion(&g, 5.0).unwrap(),
            build_max_cut(&g, 5.0).unwrap(),
            build_modularity(&g, 5.0, None).unwrap(),
        ];
        for p in &problems {
            let sol = solve(p, &cfg).unwrap();
            let qp = qp_active_set(p, QP_MAX_ROWS).unwrap();
            let lp = lp_simplex_small(&linear_relaxation(p)).unwrap().value;
            let q = p.qp_objective(&sol.x);
            println!(
                "seed {seed} {:>6}: Q {q:>12.8} active-set {:>12.8} rel err {:.1e}  c'x {:>9.5} LP {lp:>9.5}",
                p.kind().to_string(),
                qp.objective,
                (q - qp.objective).abs() / qp.objective.abs(),
                p.linear_objective(&sol.x)
            );
        }
    }
}
