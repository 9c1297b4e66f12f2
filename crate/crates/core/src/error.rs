use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,
    #[error("point set is not two-dimensional")]
    NotTwoDimensional,
    /// A documented precondition of an operation does not hold.
    #[error("{0}")]
    Precondition(String),
    #[error("polygon is not a honeycomb polygon")]
    NotHoneycomb,
    #[error("triangulation is not regular")]
    NotRegular,
    #[error("instance too large ({points} lattice points); set a cap")]
    InstanceTooLarge { points: usize },
    #[error("nonmaximal hyperelliptic polygons are not supported")]
    NonmaximalHyperelliptic,
    #[error("formula/oracle mismatch: formula {formula}, oracle {oracle}")]
    Mismatch { formula: i64, oracle: i64 },
    #[error("parse error: {0}")]
    Parse(String),
    /// An internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Mismatch { .. } | Error::Internal(_) => 4,
            _ => 3,
        }
    }
}
