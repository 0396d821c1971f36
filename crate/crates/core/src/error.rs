use thiserror::Error;

use crate::inverse_eig::ColumnResidual;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero quaternion has no inverse")]
    ZeroInverse,

    #[error("{op}: dimension mismatch ({}x{} vs {}x{})", .left.0, .left.1, .right.0, .right.1)]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{op}: expected a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("matrix {name} is not a generalized reflection: {defect}")]
    InvalidReflection {
        name: &'static str,
        defect: ReflectionDefect,
    },

    #[error("matrix violates the complex-adjoint block structure: {0}")]
    Structure(String),

    #[error("{0} is not a Hermitian idempotent")]
    NotProjector(&'static str),

    #[error("column {column} of Z fits neither block of the partition ({})", format_residuals(.residuals))]
    InfeasibleStructure {
        column: usize,
        residuals: Vec<ColumnResidual>,
    },

    #[error(
        "inverse eigenproblem is unsolvable: consistency residuals {block1:.3e} (block 1), {block2:.3e} (block 2)"
    )]
    Unsolvable { block1: f64, block2: f64 },

    #[error("infeasible instance request: {0}")]
    InfeasibleRequest(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Which defining condition of `P* = P ≠ I, P² = I` failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum ReflectionDefect {
    #[error("P is not square")]
    NotSquare,
    #[error("P is not Hermitian")]
    NotHermitian,
    #[error("P² ≠ I")]
    NotInvolutory,
    #[error("P = I")]
    Identity,
    #[error("eigenspace dimensions do not add up to n")]
    RankDeficient,
}

fn format_residuals(residuals: &[ColumnResidual]) -> String {
    residuals
        .iter()
        .map(|r| {
            format!(
                "block {}: domain {:.3e}, range {:.3e}",
                r.block, r.domain_residual, r.range_residual
            )
        })
        .collect::<Vec<_>>()
        .join("; ")
}
