//! Graph loading and normalization, and signed graphs for correlation clustering.
//!
//! Node ids are 1-based in files and 0-based in memory. Every [`Graph`] keeps
//! the original (file) id of each node in [`Graph::labels`], so relabeling by
//! [`preprocess`] is always reversible.

use std::collections::VecDeque;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::problem::pair_index;

/// `delta` used to center Jaccard scores in [`jaccard_signed_graph`].
pub const DEFAULT_JACCARD_DELTA: f64 = 0.05;
/// Offset keeping every signed weight away from zero.
pub const DEFAULT_JACCARD_EPS: f64 = 0.01;

/// Logarithm applied to the Jaccard log-odds score (natural log).
pub fn log_odds_log(v: f64) -> f64 {
    v.ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    MatrixMarket,
}

impl std::str::FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edgelist" | "txt" => Ok(GraphFormat::EdgeList),
            "matrixmarket" | "mtx" => Ok(GraphFormat::MatrixMarket),
            other => Err(Error::param(format!("unknown graph format '{other}'"))),
        }
    }
}

/// Simple undirected unweighted graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Sorted `(i, j)` with `i < j`, 0-based.
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    labels: Vec<u64>,
}

impl Graph {
    /// Builds a graph from arbitrary 0-based pairs; loops are dropped, direction and
    /// duplicates collapsed. Panics if an endpoint is `>= n`.
    pub fn from_edges(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        let mut edges: Vec<(usize, usize)> = pairs
            .into_iter()
            .filter(|&(a, b)| a != b)
            .map(|(a, b)| {
                assert!(a < n && b < n, "edge ({a}, {b}) out of range for n = {n}");
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in &edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        Graph {
            n,
            edges,
            adj,
            labels: (1..=n as u64).collect(),
        }
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))))
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.adj[i].binary_search(&j).is_ok()
    }

    /// Original 1-based id of each node.
    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Connected components, each sorted ascending, in order of their smallest node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Induced subgraph on `nodes` (sorted), relabeled 0.. in that order.
    pub fn induced(&self, nodes: &[usize]) -> Graph {
        let mut new_id = vec![usize::MAX; self.n];
        for (k, &v) in nodes.iter().enumerate() {
            new_id[v] = k;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(i, j)| new_id[i] != usize::MAX && new_id[j] != usize::MAX)
            .map(|&(i, j)| (new_id[i], new_id[j]));
        let mut g = Graph::from_edges(nodes.len(), edges);
        g.labels = nodes.iter().map(|&v| self.labels[v]).collect();
        g
    }

    /// Triangles `(i, j, k)`, `i < j < k`, in lexicographic order.
    pub fn triangles(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for &(i, j) in &self.edges {
            // common neighbors above j
            let (a, b) = (&self.adj[i], &self.adj[j]);
            let (mut p, mut q) = (a.partition_point(|&v| v <= j), b.partition_point(|&v| v <= j));
            while p < a.len() && q < b.len() {
                match a[p].cmp(&b[q]) {
                    std::cmp::Ordering::Less => p += 1,
                    std::cmp::Ordering::Greater => q += 1,
                    std::cmp::Ordering::Equal => {
                        out.push((i, j, a[p]));
                        p += 1;
                        q += 1;
                    }
                }
            }
        }
        out
    }

    /// Open wedges `(k, i, j)`: center `k` adjacent to both `i < j`, with `(i, j)` not an edge.
    /// Ordered by center, then `(i, j)` lexicographically.
    pub fn open_wedges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for k in 0..self.n {
            let nb = &self.adj[k];
            for (p, &i) in nb.iter().enumerate() {
                for &j in &nb[p + 1..] {
                    if !self.has_edge(i, j) {
                        out.push((k, i, j));
                    }
                }
            }
        }
        out
    }
}

/// Loads a graph. Weights and direction are discarded, duplicate edges collapsed and
/// self-loops dropped; the result may be disconnected.
pub fn load_graph(path: impl AsRef<Path>, format: GraphFormat) -> Result<Graph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_graph(&text, format)
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::MatrixMarket => parse_matrix_market(text),
    }
}

fn parse_id(tok: &str, line: usize) -> Result<usize> {
    let id: u64 = tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("'{tok}' is not a positive integer node id"),
    })?;
    if id == 0 {
        return Err(Error::Parse {
            line,
            msg: "node ids are 1-based".into(),
        });
    }
    usize::try_from(id - 1).map_err(|_| Error::Parse {
        line,
        msg: format!("node id {id} too large"),
    })
}

fn parse_pair(line_no: usize, line: &str) -> Result<(usize, usize)> {
    let mut toks = line.split_whitespace();
    match (toks.next(), toks.next()) {
        (Some(a), Some(b)) => Ok((parse_id(a, line_no)?, parse_id(b, line_no)?)),
        _ => Err(Error::Parse {
            line: line_no,
            msg: format!("expected two node ids, got '{line}'"),
        }),
    }
}

fn is_comment(line: &str) -> bool {
    line.starts_with('%') || line.starts_with('#')
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut pairs = Vec::new();
    let mut n = 0;
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || is_comment(line) {
            continue;
        }
        let (a, b) = parse_pair(k + 1, line)?;
        n = n.max(a + 1).max(b + 1);
        pairs.push((a, b));
    }
    finish(n, pairs)
}

fn parse_matrix_market(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty file".into(),
    })?;
    let header_lc = header.to_ascii_lowercase();
    if !header_lc.starts_with("%%matrixmarket") {
        return Err(Error::Parse {
            line: 1,
            msg: "missing %%MatrixMarket header".into(),
        });
    }
    if !header_lc.split_whitespace().any(|t| t == "coordinate") {
        return Err(Error::Parse {
            line: 1,
            msg: "only coordinate MatrixMarket files are supported".into(),
        });
    }

    let mut n = None;
    let mut pairs = Vec::new();
    for (k, raw) in lines {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        match n {
            None => {
                let dims: Vec<&str> = line.split_whitespace().collect();
                if dims.len() < 2 {
                    return Err(Error::Parse {
                        line: k + 1,
                        msg: "bad size line".into(),
                    });
                }
                let rows: usize = dims[0].parse().map_err(|_| Error::Parse {
                    line: k + 1,
                    msg: format!("bad row count '{}'", dims[0]),
                })?;
                let cols: usize = dims[1].parse().map_err(|_| Error::Parse {
                    line: k + 1,
                    msg: format!("bad column count '{}'", dims[1]),
                })?;
                n = Some(rows.max(cols));
            }
            Some(dim) => {
                let (a, b) = parse_pair(k + 1, line)?;
                if a >= dim || b >= dim {
                    return Err(Error::Parse {
                        line: k + 1,
                        msg: format!("entry ({}, {}) outside a {dim}x{dim} matrix", a + 1, b + 1),
                    });
                }
                pairs.push((a, b));
            }
        }
    }
    finish(n.unwrap_or(0), pairs)
}

fn finish(n: usize, pairs: Vec<(usize, usize)>) -> Result<Graph> {
    let g = Graph::from_edges(n, pairs);
    if g.num_edges() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(g)
}

/// Largest connected component relabeled `0..n'` in increasing original order.
/// Ties between equal-size components go to the one holding the smallest node id.
pub fn preprocess(g: &Graph) -> Graph {
    let comps = g.components();
    // components() is ordered by smallest member, so the first maximum wins ties.
    let best = comps
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| a.len().cmp(&b.len()).then(ib.cmp(ia)))
        .map(|(_, c)| c.clone())
        .unwrap_or_default();
    g.induced(&best)
}

/// Complete signed graph: a nonnegative weight and a similar/dissimilar label per pair.
///
/// Pairs are stored in row-major upper-triangle order (see [`pair_index`]).
#[derive(Debug, Clone, PartialEq)]
pub struct SignedGraph {
    n: usize,
    weights: Vec<f64>,
    dissimilar: Vec<bool>,
}

impl SignedGraph {
    pub fn new(n: usize, weights: Vec<f64>, dissimilar: Vec<bool>) -> Result<SignedGraph> {
        let pairs = n * n.saturating_sub(1) / 2;
        if weights.len() != pairs || dissimilar.len() != pairs {
            return Err(Error::input(format!(
                "signed graph on {n} nodes needs {pairs} pairs"
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::input(format!("pair weight {w} is not strictly positive")));
        }
        Ok(SignedGraph {
            n,
            weights,
            dissimilar,
        })
    }

    /// Collapses similarity/dissimilarity weights `(w+, w-)` per pair into
    /// `w = |w+ - w-|`, dissimilar iff `w- > w+`. Pairs with `w+ == w-` are rejected
    /// since they would get zero weight.
    pub fn from_pos_neg(n: usize, pos: &[f64], neg: &[f64]) -> Result<SignedGraph> {
        if pos.len() != neg.len() {
            return Err(Error::input("w+ and w- have different lengths"));
        }
        if pos.iter().chain(neg).any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::input("signed weights must be finite and nonnegative"));
        }
        let weights = pos.iter().zip(neg).map(|(p, m)| (p - m).abs()).collect();
        let dissimilar = pos.iter().zip(neg).map(|(p, m)| m > p).collect();
        SignedGraph::new(n, weights, dissimilar)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn dissimilar(&self) -> &[bool] {
        &self.dissimilar
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[pair_index(self.n, i.min(j), i.max(j))]
    }

    pub fn is_dissimilar(&self, i: usize, j: usize) -> bool {
        self.dissimilar[pair_index(self.n, i.min(j), i.max(j))]
    }

    /// Dissimilarity `d_ij` in `{0, 1}` per pair.
    pub fn labels_as_distances(&self) -> Vec<f64> {
        self.dissimilar.iter().map(|&d| if d { 1.0 } else { 0.0 }).collect()
    }
}

/// Jaccard similarity of the neighborhoods of `i` and `j` (zero if both are isolated).
pub fn jaccard(g: &Graph, i: usize, j: usize) -> f64 {
    let (a, b) = (g.neighbors(i), g.neighbors(j));
    let (mut p, mut q, mut common) = (0, 0, 0usize);
    while p < a.len() && q < b.len() {
        match a[p].cmp(&b[q]) {
            std::cmp::Ordering::Less => p += 1,
            std::cmp::Ordering::Greater => q += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                p += 1;
                q += 1;
            }
        }
    }
    let union = a.len() + b.len() - common;
    if union == 0 {
        0.0
    } else {
        common as f64 / union as f64
    }
}

/// Signed score `Z_ij` of one pair: the log-odds of `J_ij - delta`, pushed away
/// from zero by `eps` (ties at zero go positive for edges, negative otherwise).
pub fn signed_score(jacc: f64, adjacent: bool, delta: f64, eps: f64) -> f64 {
    let shifted = jacc - delta;
    let s = log_odds_log((1.0 + shifted) / (1.0 - shifted));
    if s > 0.0 {
        s + eps
    } else if s < 0.0 {
        s - eps
    } else if adjacent {
        eps
    } else {
        -eps
    }
}

/// Signed correlation-clustering instance from neighborhood overlap: weight
/// `|Z_ij|`, dissimilar iff `Z_ij < 0`.
pub fn jaccard_signed_graph(g: &Graph, delta: f64, eps: f64) -> Result<SignedGraph> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::param(format!("delta must lie in (0, 1), got {delta}")));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::param(format!("eps must be positive, got {eps}")));
    }
    let n = g.n();
    let mut weights = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    let mut dissimilar = Vec::with_capacity(weights.capacity());
    for i in 0..n {
        for j in (i + 1)..n {
            let z = signed_score(jaccard(g, i, j), g.has_edge(i, j), delta, eps);
            weights.push(z.abs());
            dissimilar.push(z < 0.0);
        }
    }
    SignedGraph::new(n, weights, dissimilar)
}
