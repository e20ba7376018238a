//! Max cut LP with triangle and perimeter constraints, solved as a minimization
//! of `-sum_E x`, reported back in maximization form.

use metricopt::certify::certify;
use metricopt::graph::Graph;
use metricopt::oracle::{ilp, linear_relaxation, lp_simplex_small};
use metricopt::problem::build_max_cut;
use metricopt::solver::{solve, SolverConfig};

fn main() {
    for (name, g) in [
        ("K3", Graph::complete(3)),
        ("K5", Graph::complete(5)),
        ("C7", Graph::from_edges(7, (0..7).map(|i| (i, (i + 1) % 7)))),
        ("Petersen", petersen()),
    ] {
        let p = build_max_cut(&g, 20.0).unwrap();
        let sol = solve(&p, &SolverConfig::default()).unwrap();
        let cert = certify(&p, &sol);
        let lp = p.to_reported(lp_simplex_small(&linear_relaxation(&p)).unwrap().value);
        let best = ilp::max_cut(&g).unwrap().value;
        println!(
            "{name:>9}: QP cut {:.4}  LP {:.4}  best cut {best}  ({:?}, {} passes)",
            cert.reported_value, lp, sol.termination, sol.passes
        );
    }
}

fn petersen() -> Graph {
    let mut e: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    e.extend((0..5).map(|i| (i, i + 5)));
    e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    Graph::from_edges(10, e)
}
