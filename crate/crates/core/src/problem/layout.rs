use serde::{Deserialize, Serialize};

/// Position of the pair `(i, j)`, `i < j < n` (0-based), in row-major
/// upper-triangle order: `(0,1), (0,2), ..., (0,n-1), (1,2), ...`.
#[inline]
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// `n choose 2`
#[inline]
pub fn num_pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `n choose 3`
#[inline]
pub fn num_triples(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// Inverse of [`pair_index`].
pub fn unrank_pair(n: usize, idx: usize) -> (usize, usize) {
    debug_assert!(idx < num_pairs(n));
    // pairs with first element < i: P(i) = C(n,2) - C(n-i,2); find the last i with P(i) <= idx
    let before = |i: usize| num_pairs(n) - num_pairs(n - i);
    let (mut lo, mut hi) = (0usize, n - 1);
    while lo + 1 < hi {
        let mid = (lo + hi) / 2;
        if before(mid) <= idx {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let i = lo;
    (i, i + 1 + (idx - before(i)))
}

/// Inverse of the lexicographic rank of `i < j < k` among all triples of `0..n`.
pub fn unrank_triple(n: usize, idx: usize) -> (usize, usize, usize) {
    debug_assert!(idx < num_triples(n));
    let before = |i: usize| num_triples(n) - num_triples(n - i);
    let (mut lo, mut hi) = (0usize, n - 2);
    while lo + 1 < hi {
        let mid = (lo + hi) / 2;
        if before(mid) <= idx {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let i = lo;
    let (a, b) = unrank_pair(n - i - 1, idx - before(i));
    (i, i + 1 + a, i + 1 + b)
}

/// How variables map to node pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum VarLayout {
    /// One variable per unordered pair.
    AllPairs { n: usize },
    /// One variable per edge, in sorted edge order.
    EdgesOnly {
        n: usize,
        edges: Vec<(usize, usize)>,
    },
    /// `y_ij` for every pair, followed by `m_ij` for every pair in the same order.
    PairsPlusSlack { n: usize },
}

impl VarLayout {
    pub fn n(&self) -> usize {
        match self {
            VarLayout::AllPairs { n }
            | VarLayout::EdgesOnly { n, .. }
            | VarLayout::PairsPlusSlack { n } => *n,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            VarLayout::AllPairs { n } => num_pairs(*n),
            VarLayout::EdgesOnly { edges, .. } => edges.len(),
            VarLayout::PairsPlusSlack { n } => 2 * num_pairs(*n),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Variable holding the pair distance (the `y` block for slack layouts).
    pub fn idx(&self, i: usize, j: usize) -> Option<usize> {
        let (i, j) = (i.min(j), i.max(j));
        if i == j || j >= self.n() {
            return None;
        }
        match self {
            VarLayout::AllPairs { n } | VarLayout::PairsPlusSlack { n } => Some(pair_index(*n, i, j)),
            VarLayout::EdgesOnly { edges, .. } => edges.binary_search(&(i, j)).ok(),
        }
    }

    /// Slack variable `m_ij` (only for [`VarLayout::PairsPlusSlack`]).
    pub fn idx_slack(&self, i: usize, j: usize) -> Option<usize> {
        match self {
            VarLayout::PairsPlusSlack { n } => self.idx(i, j).map(|v| v + num_pairs(*n)),
            _ => None,
        }
    }

    /// Node pair (0-based) that variable `v` belongs to.
    pub fn pair_of(&self, v: usize) -> (usize, usize) {
        match self {
            VarLayout::AllPairs { n } => unrank_pair(*n, v),
            VarLayout::EdgesOnly { edges, .. } => edges[v],
            VarLayout::PairsPlusSlack { n } => unrank_pair(*n, v % num_pairs(*n)),
        }
    }

    pub fn is_slack(&self, v: usize) -> bool {
        matches!(self, VarLayout::PairsPlusSlack { n } if v >= num_pairs(*n))
    }
}
