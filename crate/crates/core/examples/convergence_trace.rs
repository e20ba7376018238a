//! Watches the solver converge: the dual bound rises monotonically while the
//! constraint violation falls; the number of stored duals settles.
//!
//! cargo run --release --example convergence_trace -- [n] [p] [seed]

use metricopt::graph::preprocess;
use metricopt::problem::build_sparsest_cut;
use metricopt::rng::erdos_renyi;
use metricopt::solver::{solve_with, SolverConfig};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n = args.first().map_or(60, |s| s.parse().expect("n"));
    let prob = args.get(1).map_or(0.1, |s| s.parse().expect("p"));
    let seed = args.get(2).map_or(1, |s| s.parse().expect("seed"));

    let g = preprocess(&erdos_renyi(n, prob, seed));
    let p = build_sparsest_cut(&g, 1.0 / g.n() as f64, 5.0).unwrap();
    println!("{:>6} {:>14} {:>14} {:>11} {:>11} {:>8}", "pass", "primal", "dual", "gap", "violation", "duals");
    let sol = solve_with(&p, &SolverConfig::default(), |s, o| {
        let k = s.passes();
        if k.is_power_of_two() || k % 500 == 0 {
            println!(
                "{k:>6} {:>14.8} {:>14.8} {:>+11.3e} {:>11.3e} {:>8}",
                o.primal,
                o.dual,
                o.gap,
                s.max_violation(None),
                s.duals().len()
            );
        }
    })
    .unwrap();
    println!("{:?} after {} passes in {:.2?}", sol.termination, sol.passes, sol.elapsed);
}
