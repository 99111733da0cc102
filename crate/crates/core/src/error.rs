use thiserror::Error;

use crate::analysis::WorthReport;
use crate::game::{Variant, Violation};
use crate::numeric::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("invalid game: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),

    #[error("{what} {value} exceeds cap {cap}")]
    CapExceeded { what: &'static str, value: u64, cap: u64 },

    #[error("{location}: {message}")]
    Parse { location: String, message: String },

    #[error("operation needs {expected}, game is {found}")]
    WrongVariant { expected: &'static str, found: Variant },

    #[error("core is empty: Q_i = {}, Q_f = {}", .0.q_integral, .0.q_fractional)]
    CoreEmpty(Box<WorthReport>),

    #[error("expected {expected} entries, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dual solution is not optimal: {0}")]
    NotOptimal(String),

    #[error("imputation is not in the core: {0}")]
    NotInCore(String),

    #[error("split does not match the dual: {0}")]
    SplitMismatch(String),

    #[error("constructed profit for `{vertex}` is negative ({value})")]
    NegativeProfit { vertex: String, value: Rational },

    #[error("grand coalition has no feasible b-matching")]
    InfeasibleGame,

    #[error("LP {0}")]
    Lp(String),

    #[error("vertex solution violates polytope structure: {0}")]
    Integrality(String),

    #[error("decomposition failed: {0}")]
    Decomposition(String),

    #[error("unknown command `{0}`")]
    UnknownCommand(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
