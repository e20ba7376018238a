//! Cluster deletion LP: only edges carry variables, metric constraints live on
//! triangles and every open wedge forces one of its edges to be cut.

use metricopt::certify::certify;
use metricopt::graph::Graph;
use metricopt::oracle::{ilp, linear_relaxation, lp_simplex_small};
use metricopt::problem::build_cluster_deletion;
use metricopt::solver::{solve, SolverConfig};

fn main() {
    // Two 4-cliques joined by a bridge, plus a pendant path.
    let mut edges = Vec::new();
    for base in [0, 4] {
        for i in 0..4 {
            for j in (i + 1)..4 {
                edges.push((base + i, base + j));
            }
        }
    }
    edges.extend([(3, 4), (7, 8), (8, 9)]);
    let g = Graph::from_edges(10, edges);

    let p = build_cluster_deletion(&g, 5.0).unwrap();
    let sol = solve(&p, &SolverConfig::default()).unwrap();
    let cert = certify(&p, &sol);
    let lp = lp_simplex_small(&linear_relaxation(&p)).unwrap().value;
    let best = ilp::cluster_deletion(&g).unwrap();

    println!("{} edges, {} constraints", g.num_edges(), p.num_constraints());
    println!("QP linear part  {:.6} ({:?})", cert.linear_value, sol.termination);
    println!("exact LP        {:.6}", lp);
    println!("best deletion   {} edges, clusters {:?}", best.value, best.labels);
    let cut: Vec<(usize, usize)> = (0..p.num_vars())
        .filter(|&v| sol.x[v] > 0.5)
        .map(|v| {
            let (i, j) = p.layout().pair_of(v);
            (i + 1, j + 1)
        })
        .collect();
    println!("edges the relaxation cuts: {cut:?}");
}
