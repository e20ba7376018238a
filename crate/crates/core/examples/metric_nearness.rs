//! Metric nearness: the closest metric (weighted l1) to a noisy dissimilarity
//! matrix. Distances between points on a line are perturbed, then repaired.

use metricopt::problem::{build_metric_nearness, num_pairs, Dissimilarity};
use metricopt::rng::SplitMix64;
use metricopt::solver::{max_violation, solve, SolverConfig};

fn main() {
    let n = 12;
    let mut rng = SplitMix64::new(7);
    let pos: Vec<f64> = (0..n).map(|_| 10.0 * rng.next_f64()).collect();
    let mut d = Vec::with_capacity(num_pairs(n));
    for i in 0..n {
        for j in (i + 1)..n {
            let noise = if rng.next_f64() < 0.2 { 3.0 * rng.next_f64() } else { 0.0 };
            d.push((pos[i] - pos[j]).abs() + noise);
        }
    }
    let dis = Dissimilarity::from_pairs(n, d.clone()).unwrap();
    let w = vec![1.0; d.len()];
    let p = build_metric_nearness(&dis, &w, 10.0).unwrap();

    // Violation of the raw matrix: y = 0 means x = d.
    let mut zero = vec![0.0; p.num_vars()];
    println!("input triangle violation {:.4}", max_violation(&p, &zero, None));

    let sol = solve(&p, &SolverConfig::default()).unwrap();
    zero.copy_from_slice(&sol.x);
    let pairs = num_pairs(n);
    let moved = sol.x[..pairs].iter().filter(|y| y.abs() > 1e-6).count();
    println!(
        "{:?} after {} passes: total change {:.4}, {} of {} distances moved, violation {:.2e}",
        sol.termination,
        sol.passes,
        p.linear_objective(&sol.x),
        moved,
        pairs,
        sol.max_violation
    );
}
