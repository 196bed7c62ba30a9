use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid instance: {0}")]
    Validation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("epsilon must lie strictly between 0 and 1, got {0}")]
    InvalidEpsilon(f64),

    #[error("unsupported variant: {0}")]
    Unsupported(String),

    /// No algorithm with a guarantee is expected to exist for this variant.
    #[error("{0}")]
    Hardness(String),

    #[error(
        "oracle-scale-exceeded: instance has {n} vertices, exhaustive search is limited to {limit}"
    )]
    OracleScaleExceeded { n: usize, limit: usize },

    #[error("profit table bound exceeded: total profit {total} > {limit}")]
    TableBound { total: u128, limit: u128 },

    /// A solver produced an output that failed post-solve verification.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::Validation(_)
            | Error::InvalidArgument(_)
            | Error::InvalidEpsilon(_) => 2,
            Error::Unsupported(_) | Error::Hardness(_) => 3,
            Error::OracleScaleExceeded { .. } | Error::TableBound { .. } => 4,
            Error::Internal(_) => 1,
        }
    }
}
