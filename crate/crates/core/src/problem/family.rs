use super::layout::{num_triples, pair_index, unrank_triple};

/// One linear constraint `a'x <= b` (or `= b`), all coefficients `+-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintRow {
    pub entries: Vec<(usize, f64)>,
    pub rhs: f64,
    pub equality: bool,
}

impl ConstraintRow {
    fn le(entries: Vec<(usize, f64)>, rhs: f64) -> Self {
        ConstraintRow {
            entries,
            rhs,
            equality: false,
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.entries.iter().map(|&(v, a)| a * x[v]).sum()
    }

    /// `(a'x - b)+`, or `|a'x - b|` for equalities.
    pub fn violation(&self, x: &[f64]) -> f64 {
        let r = self.eval(x) - self.rhs;
        if self.equality {
            r.abs()
        } else {
            r.max(0.0)
        }
    }
}

/// Signs of `(x_ij, x_ik, x_jk)` for the three metric orientations of a triple,
/// in visiting order.
pub const TRIANGLE_ORIENTATIONS: [[f64; 3]; 3] = [[1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]];

/// Right-hand side of orientation `o` when the variables are `y = x - d`.
#[inline]
pub fn shifted_triangle_rhs(o: usize, dij: f64, dik: f64, djk: f64) -> f64 {
    match o {
        0 => -dij + dik + djk,
        1 => dij - dik + djk,
        _ => dij + dik - djk,
    }
}

/// An implicitly stored block of constraints.
#[derive(Debug, Clone, PartialEq)]
pub enum ConstraintFamily {
    /// All three metric orientations of every triple `i < j < k` over the pair
    /// variables `0..C(n,2)`. With `shift = Some(d)` the variables are `y = x - d`
    /// and the right-hand sides follow from `d`; otherwise they are zero.
    TriangleAll { n: usize, shift: Option<Vec<f64>> },
    /// `x_ij + x_ik + x_jk <= bound` for every triple.
    TrianglePerimeter { n: usize, bound: f64 },
    /// Metric orientations of the listed triangles, given as variable indices
    /// `[ij, ik, jk]`.
    TriangleOnCliques { triangles: Vec<[usize; 3]> },
    /// `1 <= x_a + x_b` for each listed pair of variables.
    WedgeLower { wedges: Vec<[usize; 2]> },
    /// `y_p - m_p <= 0` and `-y_p - m_p <= 0` for each pair `p`, with `m_p` at
    /// `slack_offset + p`.
    CouplingAbs { pairs: usize, slack_offset: usize },
    /// `lo <= x_v <= hi` on `start..start+len`; infinite bounds generate no rows.
    Box { start: usize, len: usize, lo: f64, hi: f64 },
    /// `sum x_v = target` on `start..start+len`.
    SumEq { start: usize, len: usize, target: f64 },
}

impl ConstraintFamily {
    pub fn name(&self) -> &'static str {
        match self {
            ConstraintFamily::TriangleAll { .. } => "triangle",
            ConstraintFamily::TrianglePerimeter { .. } => "perimeter",
            ConstraintFamily::TriangleOnCliques { .. } => "clique-triangle",
            ConstraintFamily::WedgeLower { .. } => "wedge",
            ConstraintFamily::CouplingAbs { .. } => "coupling",
            ConstraintFamily::Box { .. } => "box",
            ConstraintFamily::SumEq { .. } => "sum",
        }
    }

    pub(crate) fn box_rows_per_var(lo: f64, hi: f64) -> usize {
        lo.is_finite() as usize + hi.is_finite() as usize
    }

    pub fn count(&self) -> usize {
        match self {
            ConstraintFamily::TriangleAll { n, .. } => 3 * num_triples(*n),
            ConstraintFamily::TrianglePerimeter { n, .. } => num_triples(*n),
            ConstraintFamily::TriangleOnCliques { triangles } => 3 * triangles.len(),
            ConstraintFamily::WedgeLower { wedges } => wedges.len(),
            ConstraintFamily::CouplingAbs { pairs, .. } => 2 * pairs,
            ConstraintFamily::Box { len, lo, hi, .. } => len * Self::box_rows_per_var(*lo, *hi),
            ConstraintFamily::SumEq { .. } => 1,
        }
    }

    /// True if every right-hand side in the family is zero.
    pub fn rhs_is_zero(&self) -> bool {
        match self {
            ConstraintFamily::TriangleAll { shift, .. } => shift.is_none(),
            ConstraintFamily::TrianglePerimeter { bound, .. } => *bound == 0.0,
            ConstraintFamily::TriangleOnCliques { .. } | ConstraintFamily::CouplingAbs { .. } => true,
            ConstraintFamily::WedgeLower { .. } => false,
            ConstraintFamily::Box { lo, hi, .. } => {
                (!lo.is_finite() || *lo == 0.0) && (!hi.is_finite() || *hi == 0.0)
            }
            ConstraintFamily::SumEq { target, .. } => *target == 0.0,
        }
    }

    /// Constraint number `local` of this family (`local < count()`).
    pub fn row(&self, local: usize) -> ConstraintRow {
        debug_assert!(local < self.count());
        match self {
            ConstraintFamily::TriangleAll { n, shift } => {
                let (i, j, k) = unrank_triple(*n, local / 3);
                let o = local % 3;
                let vars = [pair_index(*n, i, j), pair_index(*n, i, k), pair_index(*n, j, k)];
                let rhs = match shift {
                    Some(d) => shifted_triangle_rhs(o, d[vars[0]], d[vars[1]], d[vars[2]]),
                    None => 0.0,
                };
                let signs = TRIANGLE_ORIENTATIONS[o];
                ConstraintRow::le((0..3).map(|s| (vars[s], signs[s])).collect(), rhs)
            }
            ConstraintFamily::TrianglePerimeter { n, bound } => {
                let (i, j, k) = unrank_triple(*n, local);
                ConstraintRow::le(
                    vec![
                        (pair_index(*n, i, j), 1.0),
                        (pair_index(*n, i, k), 1.0),
                        (pair_index(*n, j, k), 1.0),
                    ],
                    *bound,
                )
            }
            ConstraintFamily::TriangleOnCliques { triangles } => {
                let vars = triangles[local / 3];
                let signs = TRIANGLE_ORIENTATIONS[local % 3];
                ConstraintRow::le((0..3).map(|s| (vars[s], signs[s])).collect(), 0.0)
            }
            ConstraintFamily::WedgeLower { wedges } => {
                let [a, b] = wedges[local];
                ConstraintRow::le(vec![(a, -1.0), (b, -1.0)], -1.0)
            }
            ConstraintFamily::CouplingAbs { slack_offset, .. } => {
                let p = local / 2;
                let sign = if local % 2 == 0 { 1.0 } else { -1.0 };
                ConstraintRow::le(vec![(p, sign), (slack_offset + p, -1.0)], 0.0)
            }
            ConstraintFamily::Box { start, lo, hi, .. } => {
                let per = Self::box_rows_per_var(*lo, *hi);
                let v = start + local / per;
                if lo.is_finite() && local % per == 0 {
                    ConstraintRow::le(vec![(v, -1.0)], -lo)
                } else {
                    ConstraintRow::le(vec![(v, 1.0)], *hi)
                }
            }
            ConstraintFamily::SumEq { start, len, target } => ConstraintRow {
                entries: (*start..start + len).map(|v| (v, 1.0)).collect(),
                rhs: *target,
                equality: true,
            },
        }
    }

    /// Right-hand side of constraint `local`, without building the row.
    pub fn rhs(&self, local: usize) -> f64 {
        match self {
            ConstraintFamily::TriangleAll { shift: None, .. } => 0.0,
            ConstraintFamily::TriangleOnCliques { .. } | ConstraintFamily::CouplingAbs { .. } => 0.0,
            ConstraintFamily::TrianglePerimeter { bound, .. } => *bound,
            ConstraintFamily::WedgeLower { .. } => -1.0,
            ConstraintFamily::SumEq { target, .. } => *target,
            _ => self.row(local).rhs,
        }
    }
}
