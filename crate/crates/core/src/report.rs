//! Machine-readable run reports and solution dumps.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::certify::Certificate;
use crate::error::{Error, Result};
use crate::problem::{ProblemKind, VarLayout};
use crate::solver::Termination;

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunParams {
    pub gamma: f64,
    pub lambda: Option<f64>,
    pub jaccard_delta: Option<f64>,
    pub jaccard_eps: Option<f64>,
    pub weight_floor: Option<f64>,
    pub tol_gap: f64,
    pub tol_con: f64,
    pub max_passes: usize,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphInfo {
    pub source: String,
    /// Nodes and edges as loaded.
    pub input_nodes: usize,
    pub input_edges: usize,
    /// Nodes and edges after keeping the largest component.
    pub n: usize,
    pub num_edges: usize,
    /// How solver node `k` (1-based) maps back to input ids.
    pub relabeling: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub schema: u32,
    pub kind: ProblemKind,
    pub params: RunParams,
    pub graph: GraphInfo,
    pub num_variables: usize,
    pub num_constraints: usize,
    pub passes: usize,
    pub wall_time_secs: f64,
    pub termination: Termination,
    pub rounded_digits: Option<u32>,
    pub nonzero_duals: usize,
    pub certificate: Certificate,
    pub solution_path: Option<PathBuf>,
}

/// Written instead of a [`SolveReport`] when a run fails before solving.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub schema: u32,
    pub error: String,
    pub exit_code: i32,
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut w = BufWriter::new(File::create(path).map_err(io)?);
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| io(e.into()))?;
    w.write_all(b"\n").map_err(io)?;
    w.flush().map_err(io)
}

/// Shortest decimal text that parses back to `v` exactly.
fn format_value(v: f64) -> String {
    // Debug prints the shortest round-trip form and switches to exponents at extremes.
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:?}")
}

/// Solution text: a header `metricopt-x v1 <kind> n=<n> N=<N>` and one line
/// `<i> <j> <value>` per variable in layout order (1-based node ids). For
/// `(y, m)` layouts all `y` lines come first, then all `m` lines.
pub fn format_solution(kind: ProblemKind, layout: &VarLayout, x: &[f64]) -> String {
    let mut s = format!("metricopt-x v1 {} n={} N={}\n", kind, layout.n(), layout.len());
    for (v, &val) in x.iter().enumerate() {
        let (i, j) = layout.pair_of(v);
        s.push_str(&format!("{} {} {}\n", i + 1, j + 1, format_value(val)));
    }
    s
}

pub fn write_solution(kind: ProblemKind, layout: &VarLayout, x: &[f64], path: &Path) -> Result<()> {
    std::fs::write(path, format_solution(kind, layout, x)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
