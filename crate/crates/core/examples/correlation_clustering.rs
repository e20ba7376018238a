//! Weighted correlation clustering from neighborhood overlap (Jaccard) scores.
//!
//! The signed instance is solved in its metric-nearness form and the LP value is
//! compared with the best clustering found by exhaustive search.

use metricopt::certify::certify;
use metricopt::graph::{jaccard_signed_graph, preprocess, DEFAULT_JACCARD_DELTA, DEFAULT_JACCARD_EPS};
use metricopt::oracle::ilp;
use metricopt::problem::build_correlation_clustering;
use metricopt::rng::erdos_renyi;
use metricopt::solver::{solve, SolverConfig};

fn main() {
    let g = preprocess(&erdos_renyi(10, 0.35, 3));
    let sg = jaccard_signed_graph(&g, DEFAULT_JACCARD_DELTA, DEFAULT_JACCARD_EPS).unwrap();
    let dissimilar = sg.dissimilar().iter().filter(|&&d| d).count();
    println!("{} nodes, {} of {} pairs dissimilar", sg.n(), dissimilar, sg.dissimilar().len());

    for gamma in [1.0, 5.0, 50.0] {
        let p = build_correlation_clustering(&sg, gamma).unwrap();
        let sol = solve(&p, &SolverConfig::default()).unwrap();
        let cert = certify(&p, &sol);
        println!(
            "gamma {gamma:>4}: c'x = {:.5}, LP >= {:.5}, a-priori {:.3}, a-posteriori {:.3}",
            cert.linear_value,
            cert.lp_lower_bound.unwrap(),
            cert.apriori_factor.unwrap(),
            cert.aposteriori_factor.unwrap()
        );
    }

    let best = ilp::correlation_clustering(&sg).unwrap();
    println!("best clustering: disagreement {:.5}, labels {:?}", best.value, best.labels);
}
