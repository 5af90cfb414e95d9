use std::fmt;

use thiserror::Error;

use crate::graph::VertexId;
use crate::model::FeasibilityReport;

/// Errors produced by the solver, the oracles and the text formats.
#[derive(Debug, Error)]
pub enum MmdcError {
    #[error("instance rejected: {0}")]
    Rejected(FeasibilityReport),

    #[error("{0}")]
    Infeasible(Infeasibility),

    #[error("malformed solution: pair ({i}, {j}) is outside the {s}x{t} instance")]
    MalformedSolution {
        i: usize,
        j: usize,
        s: usize,
        t: usize,
    },

    #[error("oracle budget exceeded after {explored} states (limit {limit})")]
    BudgetExceeded { explored: u64, limit: u64 },

    #[error("{0}")]
    Parse(#[from] ParseError),

    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T, E = MmdcError> = std::result::Result<T, E>;

/// A stalled phase: the alternating tree rooted at `root` exhausted every
/// reachable vertex while `root` still had spare capacity.
///
/// `hall_set` is a set of X vertices whose total capacity (`demand`) exceeds
/// what their neighbourhood can absorb (`supply`), counted as
/// `Σ_y min(cap(y), |N(y) ∩ hall_set|)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Infeasibility {
    pub root: VertexId,
    pub hall_set: Vec<VertexId>,
    pub demand: u64,
    pub supply: u64,
    /// Vertex ids refer to the expanded graph of the transposed instance.
    pub swapped: bool,
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "infeasible: phase rooted at {} stalled; Hall violator {{",
            self.root
        )?;
        for (k, v) in self.hall_set.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(
            f,
            "}} needs {} but its neighbourhood absorbs at most {}",
            self.demand, self.supply
        )?;
        if self.swapped {
            f.write_str(" (sides swapped)")?;
        }
        Ok(())
    }
}

/// Parse failure with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}
