use crate::error::{Error, Result};
use crate::graph::{Graph, SignedGraph};
use crate::problem::modularity_coefficients;
use crate::problem::pair_index;

/// Largest node count for set-partition enumeration.
pub const MAX_PARTITION_NODES: usize = 10;
/// Largest node count for bipartition enumeration.
pub const MAX_BIPARTITION_NODES: usize = 18;

/// Exact optimum of a discrete clustering objective with one optimal labeling.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteOptimum {
    pub value: f64,
    /// Cluster label per node (0-based, first-occurrence order).
    pub labels: Vec<usize>,
}

/// Calls `f` with every set partition of `0..n`, as restricted growth strings.
pub fn for_each_partition(n: usize, mut f: impl FnMut(&[usize])) -> Result<()> {
    if n > MAX_PARTITION_NODES {
        return Err(Error::GuardExceeded(format!(
            "{n} nodes exceeds the partition limit of {MAX_PARTITION_NODES}"
        )));
    }
    if n == 0 {
        f(&[]);
        return Ok(());
    }
    // a[i] <= 1 + max(a[0..i])
    let mut a = vec![0usize; n];
    let mut maxp = vec![0usize; n];
    loop {
        f(&a);
        let mut i = n - 1;
        loop {
            if i == 0 {
                return Ok(());
            }
            if a[i] <= maxp[i - 1] {
                a[i] += 1;
                maxp[i] = maxp[i - 1].max(a[i]);
                for k in (i + 1)..n {
                    a[k] = 0;
                    maxp[k] = maxp[i];
                }
                break;
            }
            i -= 1;
        }
    }
}

fn best_partition(n: usize, mut score: impl FnMut(&[usize]) -> Option<f64>) -> Result<DiscreteOptimum> {
    let mut best: Option<DiscreteOptimum> = None;
    for_each_partition(n, |a| {
        if let Some(v) = score(a) {
            if best.as_ref().map_or(true, |b| v < b.value) {
                best = Some(DiscreteOptimum {
                    value: v,
                    labels: a.to_vec(),
                });
            }
        }
    })?;
    best.ok_or(Error::Infeasible)
}

/// Minimum weighted disagreements `sum w_ij |x_ij - d_ij|` over clusterings.
pub fn correlation_clustering(sg: &SignedGraph) -> Result<DiscreteOptimum> {
    let n = sg.n();
    best_partition(n, |a| {
        let mut cost = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                let apart = a[i] != a[j];
                if apart != sg.is_dissimilar(i, j) {
                    cost += sg.weight(i, j);
                }
            }
        }
        Some(cost)
    })
}

/// Fewest deleted edges leaving a disjoint union of cliques.
pub fn cluster_deletion(g: &Graph) -> Result<DiscreteOptimum> {
    let n = g.n();
    best_partition(n, |a| {
        let mut cost = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                let edge = g.has_edge(i, j);
                if a[i] == a[j] && !edge {
                    return None;
                }
                if a[i] != a[j] && edge {
                    cost += 1.0;
                }
            }
        }
        Some(cost)
    })
}

/// Maximum of `sum_{i<j together} q_ij` (the pair part of modularity), returned
/// as a positive value.
pub fn modularity(g: &Graph) -> Result<DiscreteOptimum> {
    if g.num_edges() == 0 {
        return Err(Error::EmptyGraph);
    }
    let n = g.n();
    let q = modularity_coefficients(g);
    let mut best = best_partition(n, |a| {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                if a[i] == a[j] {
                    s += q[pair_index(n, i, j)];
                }
            }
        }
        Some(-s)
    })?;
    best.value = -best.value;
    Ok(best)
}

/// Best bipartition under `score(side, |S|)` where `side[i]` marks membership in
/// `S`; node 0 is always outside `S`, so each cut is seen once.
fn best_bipartition(
    g: &Graph,
    min_side: usize,
    mut score: impl FnMut(usize, usize) -> f64,
) -> Result<DiscreteOptimum> {
    let n = g.n();
    if n > MAX_BIPARTITION_NODES {
        return Err(Error::GuardExceeded(format!(
            "{n} nodes exceeds the bipartition limit of {MAX_BIPARTITION_NODES}"
        )));
    }
    if n < 2 {
        return Err(Error::param("bipartition needs at least two nodes"));
    }
    let mut best: Option<DiscreteOptimum> = None;
    for mask in 1u32..(1u32 << (n - 1)) {
        let s = mask << 1;
        let size = s.count_ones() as usize;
        if size < min_side || n - size < min_side {
            continue;
        }
        let cut = g
            .edges()
            .iter()
            .filter(|&&(i, j)| ((s >> i) & 1) != ((s >> j) & 1))
            .count();
        let v = score(cut, size);
        if best.as_ref().map_or(true, |b| v < b.value) {
            best = Some(DiscreteOptimum {
                value: v,
                labels: (0..n).map(|i| ((s >> i) & 1) as usize).collect(),
            });
        }
    }
    best.ok_or(Error::Infeasible)
}

/// `min_S n cut(S) / (|S| |S'|)`; with `min_side`, only cuts with both sides at
/// least that large are considered.
pub fn sparsest_cut(g: &Graph, min_side: usize) -> Result<DiscreteOptimum> {
    let n = g.n();
    best_bipartition(g, min_side.max(1), |cut, size| {
        n as f64 * cut as f64 / (size as f64 * (n - size) as f64)
    })
}

/// Largest number of edges crossing a bipartition.
pub fn max_cut(g: &Graph) -> Result<DiscreteOptimum> {
    let mut best = best_bipartition(g, 1, |cut, _| -(cut as f64))?;
    best.value = -best.value;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_are_counted_by_bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203, 877];
        for (n, &b) in bell.iter().enumerate() {
            let mut count = 0;
            for_each_partition(n, |_| count += 1).unwrap();
            assert_eq!(count, b, "n = {n}");
        }
    }

    #[test]
    fn cc_triangle() {
        // +(1,2), +(1,3), -(2,3)
        let sg = SignedGraph::new(3, vec![1.0; 3], vec![false, false, true]).unwrap();
        assert_eq!(correlation_clustering(&sg).unwrap().value, 1.0);
    }

    #[test]
    fn k4_sparsest_cut() {
        assert_eq!(sparsest_cut(&Graph::complete(4), 1).unwrap().value, 4.0);
    }

    #[test]
    fn small_max_cut_and_deletion() {
        assert_eq!(max_cut(&Graph::path(2)).unwrap().value, 1.0);
        assert_eq!(max_cut(&Graph::complete(3)).unwrap().value, 2.0);
        assert_eq!(cluster_deletion(&Graph::path(3)).unwrap().value, 1.0);
        assert_eq!(cluster_deletion(&Graph::complete(4)).unwrap().value, 0.0);
    }

    #[test]
    fn guards() {
        assert!(matches!(
            for_each_partition(11, |_| {}),
            Err(Error::GuardExceeded(_))
        ));
        assert!(matches!(
            max_cut(&Graph::path(19)),
            Err(Error::GuardExceeded(_))
        ));
    }
}
