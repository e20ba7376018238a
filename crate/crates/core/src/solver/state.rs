use serde::{Deserialize, Serialize};

use super::dual_store::DualStore;
use crate::problem::{ConstraintFamily, Problem, TRIANGLE_ORIENTATIONS};

/// Primal and dual objective values at the current iterate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Objectives {
    /// `c'x + x'W_g x / 2`
    pub primal: f64,
    /// `-b'y - x'W_g x / 2`, a lower bound on the QP optimum.
    pub dual: f64,
    /// `(primal - dual) / |dual|`
    pub gap: f64,
}

/// Floor on `|D|` when normalizing the gap.
pub const GAP_FLOOR: f64 = 1e-300;

impl Objectives {
    pub fn relative_gap(primal: f64, dual: f64) -> f64 {
        (primal - dual) / dual.abs().max(GAP_FLOOR)
    }
}

/// Counters for one sweep over all constraints.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PassStats {
    pub visits: u64,
    /// Visits that moved `x`.
    pub updates: u64,
    /// Nonzero duals stored at the end of the pass.
    pub nonzero_duals: usize,
    pub bty: f64,
}

/// Called after every constraint visit; `()` is the no-op observer.
pub trait VisitObserver {
    fn after_visit(&mut self, t: u64, y_old: f64, y_new: f64, x: &[f64]);
}

impl VisitObserver for () {
    #[inline(always)]
    fn after_visit(&mut self, _: u64, _: f64, _: f64, _: &[f64]) {}
}

impl<F: FnMut(u64, f64, f64, &[f64])> VisitObserver for F {
    fn after_visit(&mut self, t: u64, y_old: f64, y_new: f64, x: &[f64]) {
        self(t, y_old, y_new, x)
    }
}

/// Receives constraints in visiting order. Rows have `K <= 4` entries of `+-1`;
/// returning `false` stops the walk.
trait RowSink {
    fn row<const K: usize>(&mut self, t: u64, v: [usize; K], a: [f64; K], b: f64) -> bool;
    /// `sum_{start..start+len} x = b`
    fn sum_eq(&mut self, t: u64, start: usize, len: usize, b: f64) -> bool;
}

/// Offsets such that `pair_index(n, i, k) == row_base[i] + k` for `k > i`.
fn row_bases(n: usize) -> Vec<usize> {
    (0..n)
        .map(|i| (i * (2 * n - i - 1) / 2).wrapping_sub(i + 1))
        .collect()
}

/// Walks every constraint of `p` in id order. Returns `false` if the sink stopped early.
fn walk<S: RowSink>(p: &Problem, sink: &mut S) -> bool {
    let mut t: u64 = 0;
    for fam in p.families() {
        match fam {
            ConstraintFamily::TriangleAll { n, shift } => {
                let n = *n;
                let base = row_bases(n);
                let [o0, o1, o2] = TRIANGLE_ORIENTATIONS;
                for i in 0..n {
                    for j in (i + 1)..n {
                        let ij = base[i].wrapping_add(j);
                        for k in (j + 1)..n {
                            let ik = base[i].wrapping_add(k);
                            let jk = base[j].wrapping_add(k);
                            let v = [ij, ik, jk];
                            let (b0, b1, b2) = match shift {
                                None => (0.0, 0.0, 0.0),
                                Some(d) => {
                                    let (dij, dik, djk) = (d[ij], d[ik], d[jk]);
                                    (-dij + dik + djk, dij - dik + djk, dij + dik - djk)
                                }
                            };
                            if !(sink.row(t, v, o0, b0) && sink.row(t + 1, v, o1, b1) && sink.row(t + 2, v, o2, b2)) {
                                return false;
                            }
                            t += 3;
                        }
                    }
                }
            }
            ConstraintFamily::TrianglePerimeter { n, bound } => {
                let n = *n;
                let base = row_bases(n);
                for i in 0..n {
                    for j in (i + 1)..n {
                        let ij = base[i].wrapping_add(j);
                        for k in (j + 1)..n {
                            let v = [ij, base[i].wrapping_add(k), base[j].wrapping_add(k)];
                            if !sink.row(t, v, [1.0; 3], *bound) {
                                return false;
                            }
                            t += 1;
                        }
                    }
                }
            }
            ConstraintFamily::TriangleOnCliques { triangles } => {
                for &v in triangles {
                    for a in TRIANGLE_ORIENTATIONS {
                        if !sink.row(t, v, a, 0.0) {
                            return false;
                        }
                        t += 1;
                    }
                }
            }
            ConstraintFamily::WedgeLower { wedges } => {
                for &v in wedges {
                    if !sink.row(t, v, [-1.0, -1.0], -1.0) {
                        return false;
                    }
                    t += 1;
                }
            }
            ConstraintFamily::CouplingAbs { pairs, slack_offset } => {
                for q in 0..*pairs {
                    let v = [q, slack_offset + q];
                    if !(sink.row(t, v, [1.0, -1.0], 0.0) && sink.row(t + 1, v, [-1.0, -1.0], 0.0)) {
                        return false;
                    }
                    t += 2;
                }
            }
            ConstraintFamily::Box { start, len, lo, hi } => {
                for v in *start..start + len {
                    if lo.is_finite() {
                        if !sink.row(t, [v], [-1.0], -lo) {
                            return false;
                        }
                        t += 1;
                    }
                    if hi.is_finite() {
                        if !sink.row(t, [v], [1.0], *hi) {
                            return false;
                        }
                        t += 1;
                    }
                }
            }
            ConstraintFamily::SumEq { start, len, target } => {
                if !sink.sum_eq(t, *start, *len, *target) {
                    return false;
                }
                t += 1;
            }
        }
    }
    debug_assert_eq!(t as usize, p.num_constraints());
    true
}

struct Projector<'a, O> {
    x: &'a mut [f64],
    scale: &'a [f64],
    duals: &'a mut DualStore,
    bty: &'a mut f64,
    observer: &'a mut O,
    stats: PassStats,
}

impl<O> Projector<'_, O> {
    /// Correction and projection fused: with `y` the stored dual,
    /// `theta = [a'(x + y W_g^-1 a) - b]+ / (a'W_g^-1 a)` and `x += (y - theta) W_g^-1 a`.
    #[inline(always)]
    fn finish(&mut self, t: u64, y_old: f64, theta: f64, b: f64) -> f64 {
        if theta != 0.0 {
            self.duals.push(t, theta);
        }
        if b != 0.0 {
            *self.bty += b * (theta - y_old);
        }
        self.stats.visits += 1;
        y_old - theta
    }
}

impl<O: VisitObserver> RowSink for Projector<'_, O> {
    #[inline(always)]
    fn row<const K: usize>(&mut self, t: u64, v: [usize; K], a: [f64; K], b: f64) -> bool {
        let y_old = self.duals.take(t);
        let mut ax = 0.0;
        let mut denom = 0.0;
        for q in 0..K {
            ax += a[q] * self.x[v[q]];
            denom += self.scale[v[q]];
        }
        let theta = (ax - b + y_old * denom).max(0.0) / denom;
        let step = self.finish(t, y_old, theta, b);
        if step != 0.0 {
            for q in 0..K {
                self.x[v[q]] += step * a[q] * self.scale[v[q]];
            }
            self.stats.updates += 1;
        }
        self.observer.after_visit(t, y_old, theta, self.x);
        true
    }

    fn sum_eq(&mut self, t: u64, start: usize, len: usize, b: f64) -> bool {
        let y_old = self.duals.take(t);
        let range = start..start + len;
        let ax: f64 = self.x[range.clone()].iter().sum();
        let denom: f64 = self.scale[range.clone()].iter().sum();
        let theta = (ax - b + y_old * denom) / denom;
        let step = self.finish(t, y_old, theta, b);
        if step != 0.0 {
            for (xv, s) in self.x[range.clone()].iter_mut().zip(&self.scale[range]) {
                *xv += step * s;
            }
            self.stats.updates += 1;
        }
        self.observer.after_visit(t, y_old, theta, self.x);
        true
    }
}

struct Violation<'a> {
    x: &'a [f64],
    worst: f64,
    stop_above: f64,
}

impl RowSink for Violation<'_> {
    #[inline(always)]
    fn row<const K: usize>(&mut self, _t: u64, v: [usize; K], a: [f64; K], b: f64) -> bool {
        let mut ax = 0.0;
        for q in 0..K {
            ax += a[q] * self.x[v[q]];
        }
        let r = ax - b;
        if r > self.worst {
            self.worst = r;
        }
        self.worst <= self.stop_above
    }

    fn sum_eq(&mut self, _t: u64, start: usize, len: usize, b: f64) -> bool {
        let r = (self.x[start..start + len].iter().sum::<f64>() - b).abs();
        self.worst = self.worst.max(r);
        self.worst <= self.stop_above
    }
}

/// Largest constraint violation of `x` for `p`. With `stop_above`, returns as
/// soon as some violation exceeds it (the result is then only a lower bound).
pub fn max_violation(p: &Problem, x: &[f64], stop_above: Option<f64>) -> f64 {
    let mut v = Violation {
        x,
        worst: 0.0,
        stop_above: stop_above.unwrap_or(f64::INFINITY),
    };
    walk(p, &mut v);
    v.worst
}

/// Iterate of the projection method: primal `x`, sparse duals, and `b'y`.
#[derive(Debug, Clone)]
pub struct SolverState<'p> {
    problem: &'p Problem,
    x: Vec<f64>,
    /// `gamma / w_i`, the diagonal of `W_g^-1`.
    scale: Vec<f64>,
    duals: DualStore,
    bty: f64,
    passes: usize,
    last: Option<Objectives>,
}

impl<'p> SolverState<'p> {
    /// `x = -W_g^-1 c`, no duals.
    pub fn new(problem: &'p Problem) -> Self {
        let gamma = problem.gamma();
        let scale: Vec<f64> = problem.weight().iter().map(|w| gamma / w).collect();
        let x = problem.cost().iter().zip(&scale).map(|(c, s)| -c * s).collect();
        SolverState {
            problem,
            x,
            scale,
            duals: DualStore::new(),
            bty: 0.0,
            passes: 0,
            last: None,
        }
    }

    pub fn problem(&self) -> &'p Problem {
        self.problem
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn duals(&self) -> &DualStore {
        &self.duals
    }

    /// Incrementally maintained `b'y`.
    pub fn bty(&self) -> f64 {
        self.bty
    }

    pub fn passes(&self) -> usize {
        self.passes
    }

    pub fn last_objectives(&self) -> Option<Objectives> {
        self.last
    }

    /// One cyclic sweep over every constraint.
    pub fn full_pass(&mut self) -> PassStats {
        self.full_pass_with(&mut ())
    }

    /// Like [`full_pass`](Self::full_pass), reporting every visit to `observer`.
    pub fn full_pass_with<O: VisitObserver>(&mut self, observer: &mut O) -> PassStats {
        let mut proj = Projector {
            x: &mut self.x,
            scale: &self.scale,
            duals: &mut self.duals,
            bty: &mut self.bty,
            observer,
            stats: PassStats::default(),
        };
        walk(self.problem, &mut proj);
        let mut stats = proj.stats;
        self.duals.swap();
        self.passes += 1;
        stats.nonzero_duals = self.duals.len();
        stats.bty = self.bty;
        stats
    }

    /// Primal value, dual bound and relative gap, in one sweep over `x`.
    pub fn objectives(&mut self) -> Objectives {
        let gamma = self.problem.gamma();
        let mut lin = 0.0;
        let mut quad = 0.0;
        for ((x, c), w) in self.x.iter().zip(self.problem.cost()).zip(self.problem.weight()) {
            lin += c * x;
            quad += w * x * x;
        }
        let half_quad = 0.5 * quad / gamma;
        let primal = lin + half_quad;
        let dual = -self.bty - half_quad;
        let o = Objectives {
            primal,
            dual,
            gap: Objectives::relative_gap(primal, dual),
        };
        self.last = Some(o);
        o
    }

    pub fn max_violation(&self, stop_above: Option<f64>) -> f64 {
        max_violation(self.problem, &self.x, stop_above)
    }

    /// `b'y` recomputed from the stored duals (for drift checks).
    pub fn recompute_bty(&self) -> f64 {
        self.duals
            .entries()
            .iter()
            .map(|e| self.problem.rhs(e.t as usize) * e.y)
            .sum()
    }

    /// `W_g x + c + A'y` from the stored duals; zero up to rounding after every pass.
    pub fn stationarity_residual(&self) -> Vec<f64> {
        let p = self.problem;
        let mut g: Vec<f64> = self
            .x
            .iter()
            .zip(p.weight())
            .zip(p.cost())
            .map(|((x, w), c)| w / p.gamma() * x + c)
            .collect();
        for e in self.duals.entries() {
            for (v, a) in p.constraint(e.t as usize).entries {
                g[v] += a * e.y;
            }
        }
        g
    }

    /// Dense dual vector as of the last completed pass.
    pub fn dual_vector(&self) -> Vec<f64> {
        self.duals.to_dense(self.problem.num_constraints())
    }

    /// Signed dual of the single `SumEq` constraint, if the problem has one.
    pub fn sum_eq_dual(&self) -> Option<f64> {
        let offsets = self.problem.family_offsets();
        let (f, _) = self
            .problem
            .families()
            .iter()
            .enumerate()
            .find(|(_, f)| matches!(f, ConstraintFamily::SumEq { .. }))?;
        let t = offsets[f] as u64;
        Some(
            self.duals
                .entries()
                .iter()
                .find(|e| e.t == t)
                .map_or(0.0, |e| e.y),
        )
    }
}
