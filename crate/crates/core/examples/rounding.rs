//! Certified stopping by rounding: once the duality gap is small, rounding the
//! iterate to a few significant digits can land exactly on a feasible optimum.

use metricopt::graph::SignedGraph;
use metricopt::problem::build_correlation_clustering;
use metricopt::solver::{round_attempt, SolverState};

fn main() {
    // Pairs (1,2), (1,3) similar with weight 2; (2,3) dissimilar with weight 1.
    let sg = SignedGraph::new(3, vec![2.0, 2.0, 1.0], vec![false, false, true]).unwrap();
    let p = build_correlation_clustering(&sg, 5.0).unwrap();
    let mut s = SolverState::new(&p);
    loop {
        s.full_pass();
        let obj = s.objectives();
        let rho = s.max_violation(None);
        println!("pass {:>3}: gap {:+.3e}  violation {:.3e}", s.passes(), obj.gap, rho);
        if obj.gap.abs() > 1e-3 {
            continue;
        }
        if let Some(r) = (2..=8).find_map(|r| round_attempt(&s, obj.dual, r, 1e-8, 1e-4)) {
            println!("accepted {} digits: x = {:?}", r.digits, r.x);
            println!("violation {:.1e}, certified gap {:.3e}", r.max_violation, r.rel_gap);
            break;
        }
    }
}
