//! The relaxations, each as an implicit [`Problem`].
//!
//! A problem is `min c'x + 1/(2 gamma) x'Wx` over an ordered list of
//! [`ConstraintFamily`] blocks. Constraint `t` is the `t`-th row in family
//! order; that global ordinal is also the constraint's dual id.

mod family;
mod layout;

pub use family::{shifted_triangle_rhs, ConstraintFamily, ConstraintRow, TRIANGLE_ORIENTATIONS};
pub use layout::{num_pairs, num_triples, pair_index, unrank_pair, unrank_triple, VarLayout};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, SignedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    MetricNearness,
    CorrelationClustering,
    SparsestCut,
    ClusterDeletion,
    MaxCut,
    Modularity,
}

impl ProblemKind {
    pub fn short_name(self) -> &'static str {
        match self {
            ProblemKind::MetricNearness => "mn",
            ProblemKind::CorrelationClustering => "cc",
            ProblemKind::SparsestCut => "sc",
            ProblemKind::ClusterDeletion => "cd",
            ProblemKind::MaxCut => "maxcut",
            ProblemKind::Modularity => "mod",
        }
    }
}

impl std::fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.short_name())
    }
}

/// Symmetric, zero-diagonal, nonnegative matrix stored by pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct Dissimilarity {
    n: usize,
    values: Vec<f64>,
}

impl Dissimilarity {
    pub fn from_pairs(n: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != num_pairs(n) {
            return Err(Error::input(format!(
                "dissimilarity on {n} nodes needs {} pair values, got {}",
                num_pairs(n),
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::input(format!("dissimilarity {v} is negative or not finite")));
        }
        Ok(Dissimilarity { n, values })
    }

    pub fn from_dense(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::input("dissimilarity matrix is not square"));
        }
        let mut values = Vec::with_capacity(num_pairs(n));
        for i in 0..n {
            if rows[i][i] != 0.0 {
                return Err(Error::input(format!("nonzero diagonal at {}", i + 1)));
            }
            for j in (i + 1)..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::input(format!(
                        "matrix is not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                values.push(rows[i][j]);
            }
        }
        Dissimilarity::from_pairs(n, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Instance data not needed by the solver but needed to interpret its output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemMeta {
    pub n: usize,
    pub num_edges: usize,
    pub lambda: Option<f64>,
    pub weight_floor: Option<f64>,
    /// Reported objective is `objective_sign * c'x + objective_constant`
    /// (undoes max-to-min conversions).
    pub objective_sign: f64,
    pub objective_constant: f64,
}

/// A regularized metric-constrained program.
#[derive(Debug, Clone)]
pub struct Problem {
    kind: ProblemKind,
    layout: VarLayout,
    cost: Vec<f64>,
    weight: Vec<f64>,
    gamma: f64,
    families: Vec<ConstraintFamily>,
    offsets: Vec<usize>,
    distances: Option<Vec<f64>>,
    meta: ProblemMeta,
}

impl Problem {
    /// Assembles and validates a problem; builders below are the usual entry points.
    pub fn new(
        kind: ProblemKind,
        layout: VarLayout,
        cost: Vec<f64>,
        weight: Vec<f64>,
        gamma: f64,
        families: Vec<ConstraintFamily>,
        meta: ProblemMeta,
    ) -> Result<Problem> {
        check_gamma(gamma)?;
        let nvars = layout.len();
        if cost.len() != nvars || weight.len() != nvars {
            return Err(Error::input(format!(
                "cost/weight length ({}, {}) does not match {nvars} variables",
                cost.len(),
                weight.len()
            )));
        }
        if let Some(w) = weight.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::input(format!("weight {w} is not strictly positive")));
        }
        if cost.iter().any(|c| !c.is_finite()) {
            return Err(Error::input("cost vector has non-finite entries"));
        }
        let mut offsets = Vec::with_capacity(families.len() + 1);
        let mut total = 0;
        offsets.push(0);
        for f in &families {
            total += f.count();
            offsets.push(total);
        }
        Ok(Problem {
            kind,
            layout,
            cost,
            weight,
            gamma,
            families,
            offsets,
            distances: None,
            meta,
        })
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn layout(&self) -> &VarLayout {
        &self.layout
    }

    pub fn cost(&self) -> &[f64] {
        &self.cost
    }

    /// Diagonal of `W` (not divided by gamma).
    pub fn weight(&self) -> &[f64] {
        &self.weight
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn families(&self) -> &[ConstraintFamily] {
        &self.families
    }

    pub fn meta(&self) -> &ProblemMeta {
        &self.meta
    }

    /// The `d_ij` for metric nearness / correlation clustering (`x = y + d`).
    pub fn distances(&self) -> Option<&[f64]> {
        self.distances.as_deref()
    }

    pub fn num_vars(&self) -> usize {
        self.layout.len()
    }

    pub fn num_constraints(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Global id of the first constraint of each family.
    pub fn family_offsets(&self) -> &[usize] {
        &self.offsets[..self.families.len()]
    }

    /// `(family index, position within family)` of constraint `t`.
    pub fn locate(&self, t: usize) -> (usize, usize) {
        assert!(t < self.num_constraints(), "constraint {t} out of range");
        let f = self.offsets.partition_point(|&o| o <= t) - 1;
        (f, t - self.offsets[f])
    }

    pub fn constraint(&self, t: usize) -> ConstraintRow {
        let (f, local) = self.locate(t);
        self.families[f].row(local)
    }

    pub fn rhs(&self, t: usize) -> f64 {
        let (f, local) = self.locate(t);
        self.families[f].rhs(local)
    }

    /// All constraints in visiting order with their global ids.
    pub fn constraints(&self) -> impl Iterator<Item = (usize, ConstraintRow)> + '_ {
        self.families
            .iter()
            .zip(&self.offsets)
            .flat_map(|(f, &off)| (0..f.count()).map(move |l| (off + l, f.row(l))))
    }

    pub fn linear_objective(&self, x: &[f64]) -> f64 {
        self.cost.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// `x'Wx` with the unscaled weights.
    pub fn quadratic_term(&self, x: &[f64]) -> f64 {
        self.weight.iter().zip(x).map(|(w, v)| w * v * v).sum()
    }

    /// `c'x + x'Wx / (2 gamma)`
    pub fn qp_objective(&self, x: &[f64]) -> f64 {
        self.linear_objective(x) + self.quadratic_term(x) / (2.0 * self.gamma)
    }

    /// Objective of the original (possibly maximization) LP at `x`.
    pub fn reported_objective(&self, x: &[f64]) -> f64 {
        self.meta.objective_sign * self.linear_objective(x) + self.meta.objective_constant
    }

    /// Maps a min-form linear value to the original objective's scale.
    pub fn to_reported(&self, linear: f64) -> f64 {
        self.meta.objective_sign * linear + self.meta.objective_constant
    }

    /// Largest violation of any constraint, by brute-force enumeration.
    pub fn max_violation_naive(&self, x: &[f64]) -> f64 {
        self.constraints().map(|(_, r)| r.violation(x)).fold(0.0, f64::max)
    }

    /// Same instance with a different regularization weight.
    pub fn with_gamma(&self, gamma: f64) -> Result<Problem> {
        check_gamma(gamma)?;
        let mut p = self.clone();
        p.gamma = gamma;
        Ok(p)
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(Error::param(format!("gamma must be positive and finite, got {gamma}")))
    }
}

fn adjacency_costs(g: &Graph) -> Vec<f64> {
    let mut c = vec![0.0; num_pairs(g.n())];
    for &(i, j) in g.edges() {
        c[pair_index(g.n(), i, j)] = 1.0;
    }
    c
}

fn pair_meta(g: &Graph) -> ProblemMeta {
    ProblemMeta {
        n: g.n(),
        num_edges: g.num_edges(),
        lambda: None,
        weight_floor: None,
        objective_sign: 1.0,
        objective_constant: 0.0,
    }
}

/// Weighted l1 metric nearness in the shifted variables `y = x - d`:
/// `min sum w m` s.t. triangle inequalities on `x`, `|y| <= m`, regularized with
/// `W = diag(w, w)`.
pub fn build_metric_nearness(d: &Dissimilarity, w: &[f64], gamma: f64) -> Result<Problem> {
    build_shifted(ProblemKind::MetricNearness, d.n(), d.values().to_vec(), w, gamma)
}

fn build_shifted(kind: ProblemKind, n: usize, d: Vec<f64>, w: &[f64], gamma: f64) -> Result<Problem> {
    let pairs = num_pairs(n);
    if w.len() != pairs {
        return Err(Error::input(format!("need {pairs} pair weights, got {}", w.len())));
    }
    if let Some(v) = w.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(Error::input(format!("pair weight {v} is not strictly positive")));
    }
    let mut cost = vec![0.0; pairs];
    cost.extend_from_slice(w);
    let mut weight = w.to_vec();
    weight.extend_from_slice(w);
    let families = vec![
        ConstraintFamily::TriangleAll {
            n,
            shift: Some(d.clone()),
        },
        ConstraintFamily::CouplingAbs {
            pairs,
            slack_offset: pairs,
        },
    ];
    let meta = ProblemMeta {
        n,
        num_edges: 0,
        lambda: None,
        weight_floor: None,
        objective_sign: 1.0,
        objective_constant: 0.0,
    };
    let mut p = Problem::new(kind, VarLayout::PairsPlusSlack { n }, cost, weight, gamma, families, meta)?;
    p.distances = Some(d);
    Ok(p)
}

/// Correlation clustering LP as metric nearness with `d_ij = 1` on dissimilar pairs.
/// No `[0, 1]` box is added: every LP optimum already lies in it.
pub fn build_correlation_clustering(sg: &SignedGraph, gamma: f64) -> Result<Problem> {
    let mut p = build_shifted(
        ProblemKind::CorrelationClustering,
        sg.n(),
        sg.labels_as_distances(),
        sg.weights(),
        gamma,
    )?;
    p.meta.num_edges = sg.dissimilar().iter().filter(|d| !**d).count();
    Ok(p)
}

/// Leighton–Rao sparsest cut relaxation, `w = 1` on edges and `lambda` elsewhere.
pub fn build_sparsest_cut(g: &Graph, lambda: f64, gamma: f64) -> Result<Problem> {
    let n = g.n();
    if n < 3 {
        return Err(Error::param(format!("sparsest cut needs n >= 3, got {n}")));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::param(format!("lambda must lie in (0, 1), got {lambda}")));
    }
    let pairs = num_pairs(n);
    let cost = adjacency_costs(g);
    let weight = cost.iter().map(|&c| if c > 0.0 { 1.0 } else { lambda }).collect();
    let families = vec![
        ConstraintFamily::TriangleAll { n, shift: None },
        ConstraintFamily::Box {
            start: 0,
            len: pairs,
            lo: 0.0,
            hi: f64::INFINITY,
        },
        ConstraintFamily::SumEq {
            start: 0,
            len: pairs,
            target: n as f64,
        },
    ];
    let mut meta = pair_meta(g);
    meta.lambda = Some(lambda);
    Problem::new(ProblemKind::SparsestCut, VarLayout::AllPairs { n }, cost, weight, gamma, families, meta)
}

/// Cluster deletion LP over edge variables: metric constraints on triangles,
/// `1 <= x_ik + x_jk` on open wedges centered at `k`, and `0 <= x <= 1`.
pub fn build_cluster_deletion(g: &Graph, gamma: f64) -> Result<Problem> {
    if g.num_edges() == 0 {
        return Err(Error::EmptyGraph);
    }
    let layout = VarLayout::EdgesOnly {
        n: g.n(),
        edges: g.edges().to_vec(),
    };
    let var = |i: usize, j: usize| layout.idx(i, j).expect("edge variable");
    let triangles = g
        .triangles()
        .into_iter()
        .map(|(i, j, k)| [var(i, j), var(i, k), var(j, k)])
        .collect();
    let wedges = g
        .open_wedges()
        .into_iter()
        .map(|(k, i, j)| [var(i, k), var(j, k)])
        .collect();
    let m = g.num_edges();
    let families = vec![
        ConstraintFamily::TriangleOnCliques { triangles },
        ConstraintFamily::WedgeLower { wedges },
        ConstraintFamily::Box {
            start: 0,
            len: m,
            lo: 0.0,
            hi: 1.0,
        },
    ];
    Problem::new(
        ProblemKind::ClusterDeletion,
        layout,
        vec![1.0; m],
        vec![1.0; m],
        gamma,
        families,
        pair_meta(g),
    )
}

/// Max cut LP, minimized as `-sum A_ij x_ij`.
pub fn build_max_cut(g: &Graph, gamma: f64) -> Result<Problem> {
    let n = g.n();
    let pairs = num_pairs(n);
    if pairs == 0 {
        return Err(Error::param("max cut needs at least two nodes"));
    }
    let cost = adjacency_costs(g).into_iter().map(|c| -c).collect();
    let families = vec![
        ConstraintFamily::TriangleAll { n, shift: None },
        ConstraintFamily::TrianglePerimeter { n, bound: 2.0 },
        ConstraintFamily::Box {
            start: 0,
            len: pairs,
            lo: 0.0,
            hi: 1.0,
        },
    ];
    let mut meta = pair_meta(g);
    meta.objective_sign = -1.0;
    Problem::new(ProblemKind::MaxCut, VarLayout::AllPairs { n }, cost, vec![1.0; pairs], gamma, families, meta)
}

/// Modularity coefficients `q_ij = (A_ij - d_i d_j / 2|E|) / 2|E|` per pair.
pub fn modularity_coefficients(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let two_m = 2.0 * g.num_edges() as f64;
    let mut q = Vec::with_capacity(num_pairs(n));
    for i in 0..n {
        for j in (i + 1)..n {
            let a = if g.has_edge(i, j) { 1.0 } else { 0.0 };
            let expected = g.degree(i) as f64 * g.degree(j) as f64 / two_m;
            q.push((a - expected) / two_m);
        }
    }
    q
}

/// Full modularity of a clustering whose pair part `sum_{i<j together} q_ij` is
/// `pair_value`: ordered pairs count twice and the diagonal adds
/// `-sum d_i^2 / (4 |E|^2)`.
pub fn modularity_from_pair_value(g: &Graph, pair_value: f64) -> f64 {
    let m = g.num_edges() as f64;
    let diag: f64 = (0..g.n()).map(|i| (g.degree(i) as f64).powi(2)).sum();
    2.0 * pair_value - diag / (4.0 * m * m)
}

/// Modularity LP over unordered pairs: maximize `sum q_ij (1 - x_ij)`, solved as
/// `min q'x` with the constant `sum q_ij` kept for reporting. `W` is `|q|` floored
/// at `weight_floor` (default `1/n^2`).
pub fn build_modularity(g: &Graph, gamma: f64, weight_floor: Option<f64>) -> Result<Problem> {
    let n = g.n();
    if g.num_edges() == 0 {
        return Err(Error::EmptyGraph);
    }
    let floor = weight_floor.unwrap_or(1.0 / (n * n) as f64);
    if !(floor > 0.0 && floor.is_finite()) {
        return Err(Error::param(format!("weight floor must be positive, got {floor}")));
    }
    let q = modularity_coefficients(g);
    let weight = q.iter().map(|v| v.abs().max(floor)).collect();
    let pairs = q.len();
    let families = vec![
        ConstraintFamily::TriangleAll { n, shift: None },
        ConstraintFamily::Box {
            start: 0,
            len: pairs,
            lo: 0.0,
            hi: 1.0,
        },
    ];
    let mut meta = pair_meta(g);
    meta.weight_floor = Some(floor);
    meta.objective_sign = -1.0;
    meta.objective_constant = q.iter().sum();
    Problem::new(ProblemKind::Modularity, VarLayout::AllPairs { n }, q, weight, gamma, families, meta)
}
