//! Minimum-cost many-to-many bipartite matching where every point carries a
//! demand (fewest matches) and a capacity (most matches).
//!
//! The instance is turned into an expanded bipartite graph
//! ([`graph::build_expanded_graph`]) whose saturating b-matchings are
//! exactly the feasible matchings that use every unit of capacity on the
//! larger side, and a capacity-aware Hungarian method
//! ([`solver::solve_mmdc`]) finds a maximum-profit one together with a dual
//! certificate. [`oracle`] holds exhaustive solvers for cross-checking.
//!
//! ```
//! use mmdc::{parse_instance, solve_mmdc};
//!
//! let inst = parse_instance("mmdc 1\n2 1\n2\n3\n1 1\n1 1\n1\n2\n").unwrap();
//! let sol = solve_mmdc(&inst).unwrap();
//! assert_eq!(sol.total_cost, 5);
//! ```

pub mod assignment;
pub mod bench;
pub mod cli;
pub mod error;
pub mod format;
pub mod generate;
pub mod graph;
pub mod model;
pub mod oracle;
pub mod solver;

pub use assignment::{solve_assignment_basic, Assignment};
pub use error::{Infeasibility, MmdcError, ParseError, Result};
pub use format::{parse_instance, parse_solution, write_instance, write_solution};
pub use generate::{generate_instance, GenParams};
pub use graph::{build_expanded_graph, ExpandedGraph, VertexClass, VertexId};
pub use model::{
    evaluate_cost, validate_instance, verify_solution, FeasibilityReport, Instance, Semantics,
    Solution,
};
pub use oracle::{compare_solvers, oracle_declared_mmdc, oracle_expanded, OracleBudget};
pub use solver::{
    certificate_check, certificate_report, solve_expanded, solve_mmdc, solve_mmdc_certified,
    solve_mmdc_with, CertificateReport, SolveOptions, SolveStats,
};
