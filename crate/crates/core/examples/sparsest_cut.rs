//! Leighton-Rao sparsest cut relaxation on a random graph, with its certificate.
//!
//! cargo run --release --example sparsest_cut -- [n] [p] [seed]

use metricopt::certify::certify;
use metricopt::graph::preprocess;
use metricopt::problem::build_sparsest_cut;
use metricopt::rng::erdos_renyi;
use metricopt::solver::{solve, SolverConfig};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n = args.first().map_or(40, |s| s.parse().expect("n"));
    let prob = args.get(1).map_or(0.15, |s| s.parse().expect("p"));
    let seed = args.get(2).map_or(1, |s| s.parse().expect("seed"));

    let g = preprocess(&erdos_renyi(n, prob, seed));
    let lambda = 1.0 / g.n() as f64;
    let p = build_sparsest_cut(&g, lambda, 5.0).unwrap();
    println!(
        "graph: {} nodes, {} edges; {} variables, {} constraints",
        g.n(),
        g.num_edges(),
        p.num_vars(),
        p.num_constraints()
    );

    let sol = solve(&p, &SolverConfig::default()).unwrap();
    let cert = certify(&p, &sol);
    println!("{:?} after {} passes ({:.2?})", sol.termination, sol.passes, sol.elapsed);
    println!("edge mass c'x           {:.6}", cert.linear_value);
    println!("LP lower bound          {:.6}", cert.lp_lower_bound.unwrap());
    println!("bound factor c'x / LB   {:.6}", cert.lp_bound_factor.unwrap_or(f64::NAN));
    println!("a-priori factor         {:.4}", cert.apriori_factor.unwrap());
    println!("a-posteriori factor     {:.4}", cert.aposteriori_factor.unwrap());
    println!("nonzero duals           {} of {}", sol.state.duals().len(), p.num_constraints());
}
