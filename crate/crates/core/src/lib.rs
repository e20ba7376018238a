//! Metric-constrained linear and quadratic programming.
//!
//! Many graph clustering relaxations (correlation clustering, Leighton–Rao
//! sparsest cut, cluster deletion, max cut, modularity, metric nearness) are
//! linear programs over pairwise distance variables `x_ij` subject to the
//! `O(n^3)` triangle inequalities `x_ij <= x_ik + x_jk`. Black-box LP solvers
//! run out of memory long before these become interesting, so this crate
//! instead solves the quadratically regularized problem
//!
//! ```text
//!     minimize   c'x + 1/(2 gamma) x' W x
//!     subject to A x <= b
//! ```
//!
//! with Dykstra's cyclic projection method. Constraints are never materialized:
//! each family is generated on the fly in a fixed order, and only the nonzero
//! dual variables are stored. The dual iterate gives a monotonically increasing
//! lower bound, which together with a rounding step yields a certified stopping
//! rule. The [`certify`] module turns a solved instance into approximation
//! guarantees for the underlying LP or clustering objective.
//!
//! # Layout
//!
//! - [`graph`]: edge-list / MatrixMarket loading, largest component, Jaccard signed graphs
//! - [`problem`]: the six relaxations as implicit constraint families
//! - [`solver`]: the projection engine, dual store, stopping rule and rounding
//! - [`certify`]: a-priori and a-posteriori approximation factors
//! - [`oracle`]: small dense reference solvers used to cross-check everything above
//! - [`report`]: serializable run reports and the solution text format
//! - [`cli`]: the `metricopt` command line front end
//!
//! # Example
//!
//! ```
//! use metricopt::graph::Graph;
//! use metricopt::problem::build_sparsest_cut;
//! use metricopt::solver::{solve, SolverConfig};
//!
//! let g = Graph::complete(6);
//! let p = build_sparsest_cut(&g, 1.0 / 6.0, 5.0).unwrap();
//! let sol = solve(&p, &SolverConfig::default()).unwrap();
//! assert!(sol.termination.converged());
//! // K_n has LP value n; the QP solution spreads the mass evenly.
//! assert!((p.linear_objective(&sol.x) - 6.0).abs() < 1e-3);
//! ```

pub mod certify;
pub mod cli;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod problem;
pub mod report;
pub mod rng;
pub mod solver;

pub use error::{Error, Result};
