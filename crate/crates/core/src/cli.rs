//! Command-line front end.
//!
//! ```text
//! metricopt solve <cc|sc|cd|maxcut|mod|mn> --graph PATH [options]
//! metricopt bench <kind> --nodes N --prob P --seed K [options]
//! ```
//!
//! Exit codes: 0 converged, 2 pass limit reached, 64 usage or parameter error,
//! 74 input/output or data error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use crate::certify::certify;
use crate::error::{Error, Result};
use crate::graph::{self, Graph, GraphFormat};
use crate::problem::{self, num_pairs, pair_index, Dissimilarity, Problem, ProblemKind};
use crate::report::{self, ErrorReport, GraphInfo, RunParams, SolveReport, REPORT_SCHEMA};
use crate::rng::erdos_renyi;
use crate::solver::{solve, SolverConfig, Termination};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_CONVERGED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Parser)]
#[command(name = "metricopt", version, about = "Projection solver for metric-constrained LP relaxations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a relaxation built from a graph (or distance) file.
    Solve {
        kind: KindArg,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: FormatArg,
        /// `i j d [w]` lines (metric nearness only); missing pairs get d = 0, w = 1.
        #[arg(long)]
        distances: Option<PathBuf>,
        #[command(flatten)]
        opts: SolveOpts,
    },
    /// Solve on an Erdős–Rényi G(n, p) graph generated from a seed.
    Bench {
        kind: KindArg,
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        opts: SolveOpts,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Cc,
    Sc,
    Cd,
    Maxcut,
    Mod,
    Mn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Edgelist,
    Mtx,
}

#[derive(Debug, Clone, Args)]
struct SolveOpts {
    #[arg(long, default_value_t = 5.0)]
    gamma: f64,
    /// Non-edge weight for sparsest cut: a number, or `auto` for 1/n.
    #[arg(long, default_value = "auto")]
    lambda: String,
    /// Jaccard centering for correlation clustering.
    #[arg(long, default_value_t = graph::DEFAULT_JACCARD_DELTA)]
    delta: f64,
    /// Jaccard weight offset for correlation clustering.
    #[arg(long, default_value_t = graph::DEFAULT_JACCARD_EPS)]
    eps: f64,
    /// Weight floor for modularity (default 1/n^2).
    #[arg(long)]
    weight_floor: Option<f64>,
    #[arg(long, default_value_t = 1e-4)]
    tol_gap: f64,
    #[arg(long, default_value_t = 1e-8)]
    tol_con: f64,
    #[arg(long, default_value_t = 10_000)]
    max_passes: usize,
    #[arg(long, default_value_t = 10)]
    check_period: usize,
    #[arg(long, default_value = "report.json")]
    out: PathBuf,
    /// Also write the solution vector here.
    #[arg(long)]
    solution: Option<PathBuf>,
}

impl KindArg {
    fn kind(self) -> ProblemKind {
        match self {
            KindArg::Cc => ProblemKind::CorrelationClustering,
            KindArg::Sc => ProblemKind::SparsestCut,
            KindArg::Cd => ProblemKind::ClusterDeletion,
            KindArg::Maxcut => ProblemKind::MaxCut,
            KindArg::Mod => ProblemKind::Modularity,
            KindArg::Mn => ProblemKind::MetricNearness,
        }
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_) | Error::Disconnected => EXIT_USAGE,
        _ => EXIT_IO,
    }
}

/// Runs the CLI on `args` (including the program name). Human-readable output
/// goes to `out`, diagnostics to `err`; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let out_path = match &cli.command {
        Command::Solve { opts, .. } | Command::Bench { opts, .. } => opts.out.clone(),
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let code = exit_code(&e);
            let _ = writeln!(err, "error: {e}");
            if code == EXIT_USAGE {
                let _ = writeln!(err, "\n{}", Cli::command().render_usage());
            }
            let rep = ErrorReport {
                schema: REPORT_SCHEMA,
                error: e.to_string(),
                exit_code: code,
            };
            if let Err(we) = report::write_json(&rep, &out_path) {
                let _ = writeln!(err, "error: {we}");
            }
            code
        }
    }
}

struct Input {
    problem: Problem,
    graph: GraphInfo,
    lambda: Option<f64>,
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    let (kind, opts, input, seed) = match cmd {
        Command::Solve {
            kind,
            graph,
            format,
            distances,
            opts,
        } => {
            let input = if kind == KindArg::Mn {
                if graph.is_some() {
                    return Err(Error::param("mn takes --distances, not --graph"));
                }
                let path = distances.ok_or_else(|| Error::param("mn requires --distances PATH"))?;
                distance_input(&path, &opts)?
            } else {
                let path = graph.ok_or_else(|| Error::param("--graph PATH is required"))?;
                let fmt = match format {
                    FormatArg::Edgelist => GraphFormat::EdgeList,
                    FormatArg::Mtx => GraphFormat::MatrixMarket,
                };
                let g = graph::load_graph(&path, fmt)?;
                graph_input(kind, &g, path.display().to_string(), &opts)?
            };
            (kind, opts, input, None)
        }
        Command::Bench {
            kind,
            nodes,
            prob,
            seed,
            opts,
        } => {
            if kind == KindArg::Mn {
                return Err(Error::param("bench does not support mn"));
            }
            if !(0.0..=1.0).contains(&prob) {
                return Err(Error::param(format!("--prob must lie in [0, 1], got {prob}")));
            }
            let g = erdos_renyi(nodes, prob, seed);
            if g.num_edges() == 0 {
                return Err(Error::EmptyGraph);
            }
            let src = format!("gnp(n={nodes}, p={prob}, seed={seed})");
            (kind, opts.clone(), graph_input(kind, &g, src, &opts)?, Some(seed))
        }
    };

    let cfg = SolverConfig {
        tol_gap: opts.tol_gap,
        tol_con: opts.tol_con,
        max_passes: opts.max_passes,
        full_check_period: opts.check_period,
        ..SolverConfig::default()
    };
    let p = &input.problem;
    let sol = solve(p, &cfg)?;
    let cert = certify(p, &sol);
    if let Some(path) = &opts.solution {
        report::write_solution(p.kind(), p.layout(), &sol.x, path)?;
    }
    let rep = SolveReport {
        schema: REPORT_SCHEMA,
        kind: kind.kind(),
        params: RunParams {
            gamma: opts.gamma,
            lambda: input.lambda,
            jaccard_delta: (kind == KindArg::Cc).then_some(opts.delta),
            jaccard_eps: (kind == KindArg::Cc).then_some(opts.eps),
            weight_floor: p.meta().weight_floor,
            tol_gap: opts.tol_gap,
            tol_con: opts.tol_con,
            max_passes: opts.max_passes,
            seed,
        },
        graph: input.graph,
        num_variables: p.num_vars(),
        num_constraints: p.num_constraints(),
        passes: sol.passes,
        wall_time_secs: sol.elapsed.as_secs_f64(),
        termination: sol.termination,
        rounded_digits: sol.rounded_digits,
        nonzero_duals: sol.state.duals().len(),
        certificate: cert,
        solution_path: opts.solution.clone(),
    };
    report::write_json(&rep, &opts.out)?;
    let _ = writeln!(
        out,
        "{} n={} constraints={} passes={} termination={:?} value={} gap={:.3e} violation={:.3e}",
        rep.kind,
        rep.graph.n,
        rep.num_constraints,
        rep.passes,
        rep.termination,
        rep.certificate.reported_value,
        rep.certificate.rel_gap,
        rep.certificate.max_violation
    );
    Ok(match sol.termination {
        Termination::GapMet | Termination::Rounded => EXIT_OK,
        Termination::MaxPasses => EXIT_NOT_CONVERGED,
    })
}

fn graph_input(kind: KindArg, raw: &Graph, source: String, opts: &SolveOpts) -> Result<Input> {
    let g = graph::preprocess(raw);
    let relabeling = if g.n() == raw.n() {
        "identity".to_string()
    } else {
        let ids: Vec<String> = g.labels().iter().map(|l| l.to_string()).collect();
        format!("largest component; node k is input node [{}][k-1]", ids.join(","))
    };
    let info = GraphInfo {
        source,
        input_nodes: raw.n(),
        input_edges: raw.num_edges(),
        n: g.n(),
        num_edges: g.num_edges(),
        relabeling,
    };
    let mut lambda = None;
    let problem = match kind {
        KindArg::Cc => {
            let sg = graph::jaccard_signed_graph(&g, opts.delta, opts.eps)?;
            problem::build_correlation_clustering(&sg, opts.gamma)?
        }
        KindArg::Sc => {
            let l = parse_lambda(&opts.lambda, g.n())?;
            lambda = Some(l);
            problem::build_sparsest_cut(&g, l, opts.gamma)?
        }
        KindArg::Cd => problem::build_cluster_deletion(&g, opts.gamma)?,
        KindArg::Maxcut => problem::build_max_cut(&g, opts.gamma)?,
        KindArg::Mod => problem::build_modularity(&g, opts.gamma, opts.weight_floor)?,
        KindArg::Mn => unreachable!("metric nearness reads distances"),
    };
    Ok(Input {
        problem,
        graph: info,
        lambda,
    })
}

fn distance_input(path: &Path, opts: &SolveOpts) -> Result<Input> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let (d, w) = parse_distances(&text)?;
    let n = d.n();
    let problem = problem::build_metric_nearness(&d, &w, opts.gamma)?;
    let info = GraphInfo {
        source: path.display().to_string(),
        input_nodes: n,
        input_edges: 0,
        n,
        num_edges: 0,
        relabeling: "identity".into(),
    };
    Ok(Input {
        problem,
        graph: info,
        lambda: None,
    })
}

/// `auto` is `1/n`.
fn parse_lambda(s: &str, n: usize) -> Result<f64> {
    if s == "auto" {
        return Ok(1.0 / n as f64);
    }
    s.parse::<f64>()
        .map_err(|_| Error::param(format!("--lambda must be a number or 'auto', got '{s}'")))
}

/// Parses `i j d [w]` lines (1-based ids, `%`/`#` comments). Pairs not listed
/// get `d = 0`, `w = 1`; `n` is the largest id seen.
pub fn parse_distances(text: &str) -> Result<(Dissimilarity, Vec<f64>)> {
    let mut entries = Vec::new();
    let mut n = 0usize;
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') || line.starts_with('#') {
            continue;
        }
        let bad = |msg: &str| Error::Parse {
            line: ln + 1,
            msg: msg.to_string(),
        };
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 3 && f.len() != 4 {
            return Err(bad("expected 'i j d' or 'i j d w'"));
        }
        let i: usize = f[0].parse().map_err(|_| bad("node id is not a positive integer"))?;
        let j: usize = f[1].parse().map_err(|_| bad("node id is not a positive integer"))?;
        if i == 0 || j == 0 {
            return Err(bad("node ids are 1-based"));
        }
        if i == j {
            return Err(bad("diagonal entries are not allowed"));
        }
        let d: f64 = f[2].parse().map_err(|_| bad("distance is not a number"))?;
        let w: f64 = match f.get(3) {
            Some(s) => s.parse().map_err(|_| bad("weight is not a number"))?,
            None => 1.0,
        };
        n = n.max(i).max(j);
        entries.push((ln + 1, i - 1, j - 1, d, w));
    }
    if n < 2 {
        return Err(Error::input("distance file lists no pairs"));
    }
    let mut d = vec![0.0; num_pairs(n)];
    let mut w = vec![1.0; num_pairs(n)];
    let mut seen = vec![false; num_pairs(n)];
    for (line, i, j, dv, wv) in entries {
        let k = pair_index(n, i.min(j), i.max(j));
        if seen[k] && (d[k] != dv || w[k] != wv) {
            return Err(Error::Parse {
                line,
                msg: "pair listed twice with different values".into(),
            });
        }
        seen[k] = true;
        d[k] = dv;
        w[k] = wv;
    }
    Ok((Dissimilarity::from_pairs(n, d)?, w))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distances_parse() {
        let (d, w) = parse_distances("# test\n1 2 0.5\n2 3 1 2\n").unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!(d.values(), &[0.5, 0.0, 1.0]);
        assert_eq!(w, vec![1.0, 1.0, 2.0]);
        assert!(parse_distances("1 1 0.5\n").is_err());
        assert!(parse_distances("1 2\n").is_err());
    }

    #[test]
    fn lambda_auto() {
        assert_eq!(parse_lambda("auto", 10).unwrap(), 0.1);
        assert_eq!(parse_lambda("0.25", 10).unwrap(), 0.25);
        assert!(parse_lambda("x", 10).is_err());
    }
}
