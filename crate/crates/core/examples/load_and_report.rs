//! Loads a graph file, keeps its largest component, solves, and writes the JSON
//! report and solution text the command line tool would produce.
//!
//! cargo run --release --example load_and_report -- graph.txt [edgelist|mtx]

use metricopt::certify::certify;
use metricopt::graph::{load_graph, parse_graph, preprocess, GraphFormat};
use metricopt::problem::build_cluster_deletion;
use metricopt::report::format_solution;
use metricopt::solver::{solve, SolverConfig};

const DEMO: &str = "%%MatrixMarket matrix coordinate pattern symmetric
% two triangles sharing node 3, plus a separate edge
7 7 7
2 1
3 1
3 2
4 3
5 3
5 4
7 6
";

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let raw = match args.first() {
        Some(path) => {
            let fmt = match args.get(1).map(String::as_str) {
                Some("mtx") => GraphFormat::MatrixMarket,
                _ => GraphFormat::EdgeList,
            };
            load_graph(path, fmt).unwrap()
        }
        None => parse_graph(DEMO, GraphFormat::MatrixMarket).unwrap(),
    };
    let g = preprocess(&raw);
    println!(
        "loaded {} nodes / {} edges; largest component has {} nodes (input ids {:?})",
        raw.n(),
        raw.num_edges(),
        g.n(),
        g.labels()
    );

    let p = build_cluster_deletion(&g, 5.0).unwrap();
    let sol = solve(&p, &SolverConfig::default()).unwrap();
    let cert = certify(&p, &sol);
    println!("{}", serde_json::to_string_pretty(&cert).unwrap());
    print!("{}", format_solution(p.kind(), p.layout(), &sol.x));
}
