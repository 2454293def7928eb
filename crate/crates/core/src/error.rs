use thiserror::Error;

use crate::parse::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid algebra descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("elements belong to different algebras ({left} vs {right})")]
    AlgebraMismatch { left: String, right: String },

    #[error("element is not idempotent (residual {residual:.3e})")]
    NotIdempotent { residual: f64 },

    #[error("natural trace {trace} is farther than 0.01 from an integer")]
    NonIntegralRank { trace: f64 },

    #[error("propositions are not orthogonal (residual {residual:.3e})")]
    NotOrthogonal { residual: f64 },

    #[error("proposition is not below its bound (residual {residual:.3e})")]
    NotBelow { residual: f64 },

    #[error("cannot condition on a proposition of probability {probability:.3e}")]
    ConditioningOnNull { probability: f64 },

    #[error("expected an atom, got a proposition of rank {rank}")]
    NotAtom { rank: usize },

    #[error("not a state: {0}")]
    InvalidState(String),

    #[error("numerical failure in {context}: residual {residual:.3e}")]
    Numerical { context: &'static str, residual: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}
