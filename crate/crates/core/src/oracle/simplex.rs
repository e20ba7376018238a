use crate::error::{Error, Result};

/// Largest `rows x variables` product accepted by [`lp_simplex_small`].
pub const LP_MAX_ENTRIES: usize = 1_000_000;

const EPS: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

/// A small dense linear program.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseLp {
    pub objective: Vec<f64>,
    pub maximize: bool,
    pub rows: Vec<(Vec<f64>, Sense, f64)>,
    /// Per-variable bounds; infinities allowed.
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl DenseLp {
    /// `n` variables bounded below by zero, no rows.
    pub fn new(objective: Vec<f64>, maximize: bool) -> Self {
        let n = objective.len();
        DenseLp {
            objective,
            maximize,
            rows: Vec::new(),
            lower: vec![0.0; n],
            upper: vec![f64::INFINITY; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_row(&mut self, coefs: Vec<f64>, sense: Sense, rhs: f64) -> &mut Self {
        self.rows.push((coefs, sense, rhs));
        self
    }

    /// Adds a row given as sparse `(var, coef)` entries.
    pub fn add_sparse_row(&mut self, entries: &[(usize, f64)], sense: Sense, rhs: f64) -> &mut Self {
        let mut coefs = vec![0.0; self.num_vars()];
        for &(v, a) in entries {
            coefs[v] += a;
        }
        self.add_row(coefs, sense, rhs)
    }

    pub fn set_bounds(&mut self, v: usize, lower: f64, upper: f64) -> &mut Self {
        self.lower[v] = lower;
        self.upper[v] = upper;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
}

/// How an original variable maps to nonnegative internal columns.
#[derive(Debug, Clone, Copy)]
enum VarMap {
    /// `x = lo + col`
    Shift { col: usize, lo: f64 },
    /// `x = hi - col`
    Mirror { col: usize, hi: f64 },
    /// `x = pos - neg`
    Split { pos: usize, neg: usize },
}

/// Optimal vertex of `lp` by a two-phase bounded-variable primal simplex on a
/// dense tableau, with Bland's rule against cycling.
pub fn lp_simplex_small(lp: &DenseLp) -> Result<LpSolution> {
    let nv = lp.num_vars();
    if lp.lower.len() != nv || lp.upper.len() != nv || lp.rows.iter().any(|r| r.0.len() != nv) {
        return Err(Error::input("LP dimensions are inconsistent"));
    }
    if lp.rows.len().max(1) * nv.max(1) > LP_MAX_ENTRIES {
        return Err(Error::GuardExceeded(format!(
            "{} rows x {nv} variables exceeds {LP_MAX_ENTRIES}",
            lp.rows.len()
        )));
    }
    for v in 0..nv {
        if lp.lower[v] > lp.upper[v] || lp.lower[v] == f64::INFINITY || lp.upper[v] == f64::NEG_INFINITY {
            return Err(Error::Infeasible);
        }
    }

    // Internal columns: structural (nonnegative, maybe upper bounded).
    let mut maps = Vec::with_capacity(nv);
    let mut col_ub: Vec<f64> = Vec::new();
    for v in 0..nv {
        let (lo, hi) = (lp.lower[v], lp.upper[v]);
        if lo.is_finite() {
            maps.push(VarMap::Shift { col: col_ub.len(), lo });
            col_ub.push(hi - lo);
        } else if hi.is_finite() {
            maps.push(VarMap::Mirror { col: col_ub.len(), hi });
            col_ub.push(f64::INFINITY);
        } else {
            maps.push(VarMap::Split {
                pos: col_ub.len(),
                neg: col_ub.len() + 1,
            });
            col_ub.push(f64::INFINITY);
            col_ub.push(f64::INFINITY);
        }
    }
    let n_struct = col_ub.len();
    let sign = if lp.maximize { -1.0 } else { 1.0 };
    let mut cost = vec![0.0; n_struct];
    for (v, m) in maps.iter().enumerate() {
        let c = sign * lp.objective[v];
        match *m {
            VarMap::Shift { col, .. } => cost[col] += c,
            VarMap::Mirror { col, .. } => cost[col] -= c,
            VarMap::Split { pos, neg } => {
                cost[pos] += c;
                cost[neg] -= c;
            }
        }
    }

    let m = lp.rows.len();
    let n_slack = lp.rows.iter().filter(|r| r.1 != Sense::Eq).count();
    let ncols = n_struct + n_slack + m;
    let art0 = n_struct + n_slack;
    let mut tab = vec![0.0; m * ncols];
    let mut rhs = vec![0.0; m];
    let mut slack = n_struct;
    for (r, (coefs, sense, b)) in lp.rows.iter().enumerate() {
        let row = &mut tab[r * ncols..(r + 1) * ncols];
        let mut beta = *b;
        for (v, &a) in coefs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            match maps[v] {
                VarMap::Shift { col, lo } => {
                    row[col] += a;
                    beta -= a * lo;
                }
                VarMap::Mirror { col, hi } => {
                    row[col] -= a;
                    beta -= a * hi;
                }
                VarMap::Split { pos, neg } => {
                    row[pos] += a;
                    row[neg] -= a;
                }
            }
        }
        match sense {
            Sense::Le => {
                row[slack] = 1.0;
                slack += 1;
            }
            Sense::Ge => {
                row[slack] = -1.0;
                slack += 1;
            }
            Sense::Eq => {}
        }
        if beta < 0.0 {
            for a in row.iter_mut() {
                *a = -*a;
            }
            beta = -beta;
        }
        row[art0 + r] = 1.0;
        rhs[r] = beta;
    }
    let mut ub = col_ub;
    ub.resize(ncols, f64::INFINITY);

    let mut t = Tableau {
        m,
        ncols,
        tab,
        rhs,
        basis: (art0..art0 + m).collect(),
        at_upper: vec![false; ncols],
        ub,
        allowed: vec![true; ncols],
    };

    // Phase 1: minimize the sum of artificials.
    let mut c1 = vec![0.0; ncols];
    for c in &mut c1[art0..] {
        *c = 1.0;
    }
    t.optimize(&c1)?;
    let infeas: f64 = t.basis.iter().zip(&t.rhs).filter(|(b, _)| **b >= art0).map(|(_, v)| *v).sum();
    let scale = 1.0 + lp.rows.iter().map(|r| r.2.abs()).fold(0.0, f64::max);
    if infeas > 1e-8 * scale {
        return Err(Error::Infeasible);
    }
    for j in art0..ncols {
        t.ub[j] = 0.0;
        t.allowed[j] = false;
    }

    // Phase 2.
    let mut c2 = cost;
    c2.resize(ncols, 0.0);
    t.optimize(&c2)?;

    let vals = t.values();
    let x: Vec<f64> = maps
        .iter()
        .map(|m| match *m {
            VarMap::Shift { col, lo } => lo + vals[col],
            VarMap::Mirror { col, hi } => hi - vals[col],
            VarMap::Split { pos, neg } => vals[pos] - vals[neg],
        })
        .collect();
    let value = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok(LpSolution { x, value })
}

struct Tableau {
    m: usize,
    ncols: usize,
    /// `B^-1 A`, row-major.
    tab: Vec<f64>,
    /// Current values of the basic variables.
    rhs: Vec<f64>,
    basis: Vec<usize>,
    /// Nonbasic columns sitting at their upper bound.
    at_upper: Vec<bool>,
    ub: Vec<f64>,
    /// Columns that may enter the basis.
    allowed: Vec<bool>,
}

impl Tableau {
    fn values(&self) -> Vec<f64> {
        let mut v: Vec<f64> = (0..self.ncols)
            .map(|j| if self.at_upper[j] { self.ub[j] } else { 0.0 })
            .collect();
        for (r, &b) in self.basis.iter().enumerate() {
            v[b] = self.rhs[r];
        }
        v
    }

    fn optimize(&mut self, cost: &[f64]) -> Result<()> {
        let (m, nc) = (self.m, self.ncols);
        let mut is_basic = vec![false; nc];
        for &b in &self.basis {
            is_basic[b] = true;
        }
        // Reduced costs d_j = c_j - c_B' B^-1 a_j.
        let mut d = cost.to_vec();
        for r in 0..m {
            let cb = cost[self.basis[r]];
            if cb != 0.0 {
                for j in 0..nc {
                    d[j] -= cb * self.tab[r * nc + j];
                }
            }
        }
        let max_iter = 50_000 + 100 * (m + nc);
        for _ in 0..max_iter {
            // Bland: lowest-index improving column.
            let entering = (0..nc).find(|&j| {
                !is_basic[j]
                    && self.allowed[j]
                    && ((!self.at_upper[j] && d[j] < -EPS) || (self.at_upper[j] && d[j] > EPS))
            });
            let Some(j) = entering else {
                return Ok(());
            };
            let dir = if self.at_upper[j] { -1.0 } else { 1.0 };

            // Ratio test; ties go to the lowest basic column index.
            let mut step = self.ub[j];
            let mut leave: Option<(usize, bool)> = None;
            for r in 0..m {
                let alpha = dir * self.tab[r * nc + j];
                let b = self.basis[r];
                let (lim, to_upper) = if alpha > EPS {
                    (self.rhs[r].max(0.0) / alpha, false)
                } else if alpha < -EPS && self.ub[b].is_finite() {
                    ((self.ub[b] - self.rhs[r]).max(0.0) / -alpha, true)
                } else {
                    continue;
                };
                let better = match leave {
                    None => lim < step || (lim == step && step.is_finite()),
                    Some((r0, _)) => lim < step || (lim == step && b < self.basis[r0]),
                };
                if better {
                    step = lim;
                    leave = Some((r, to_upper));
                }
            }
            if !step.is_finite() {
                return Err(Error::Unbounded);
            }
            for r in 0..m {
                self.rhs[r] -= dir * step * self.tab[r * nc + j];
            }
            let Some((r, to_upper)) = leave else {
                // Entering column moves to its other bound; no pivot.
                self.at_upper[j] = !self.at_upper[j];
                continue;
            };
            let entering_value = if dir > 0.0 { step } else { self.ub[j] - step };
            let out = self.basis[r];
            self.at_upper[out] = to_upper;
            is_basic[out] = false;
            self.at_upper[j] = false;
            is_basic[j] = true;
            self.basis[r] = j;
            self.rhs[r] = entering_value;

            let piv = self.tab[r * nc + j];
            for c in 0..nc {
                self.tab[r * nc + c] /= piv;
            }
            let prow: Vec<f64> = self.tab[r * nc..(r + 1) * nc].to_vec();
            for rr in 0..m {
                if rr == r {
                    continue;
                }
                let f = self.tab[rr * nc + j];
                if f != 0.0 {
                    for c in 0..nc {
                        self.tab[rr * nc + c] -= f * prow[c];
                    }
                }
            }
            let f = d[j];
            for c in 0..nc {
                d[c] -= f * prow[c];
            }
        }
        Err(Error::Numerical("simplex iteration limit reached".into()))
    }
}
