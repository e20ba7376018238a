//! Modularity LP on a small two-community graph: the relaxation's value bounds
//! the best achievable modularity from above.

use metricopt::certify::certify;
use metricopt::graph::Graph;
use metricopt::oracle::ilp;
use metricopt::problem::{build_modularity, modularity_from_pair_value};
use metricopt::solver::{solve, SolverConfig};

fn main() {
    // Two 4-cliques joined by two edges.
    let mut edges = vec![(3, 4), (0, 7)];
    for base in [0, 4] {
        for i in 0..4 {
            for j in (i + 1)..4 {
                edges.push((base + i, base + j));
            }
        }
    }
    let g = Graph::from_edges(8, edges);
    let p = build_modularity(&g, 50.0, None).unwrap();
    let sol = solve(&p, &SolverConfig::default()).unwrap();
    let cert = certify(&p, &sol);
    let best = ilp::modularity(&g).unwrap();

    println!("{:?} after {} passes", sol.termination, sol.passes);
    println!(
        "relaxed modularity  {:.5}",
        modularity_from_pair_value(&g, cert.reported_value)
    );
    println!(
        "best modularity     {:.5}  labels {:?}",
        modularity_from_pair_value(&g, best.value),
        best.labels
    );
}
