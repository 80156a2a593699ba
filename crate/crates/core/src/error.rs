use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("factorization of a {rows}x{cols} matrix did not converge")]
    NonConvergence { rows: usize, cols: usize },

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("basis columns are not orthonormal (residual {residual:e})")]
    NotOrthonormal { residual: f64 },

    #[error("matrix is numerically singular (min eigenvalue {min:e}, max eigenvalue {max:e})")]
    Singular { min: f64, max: f64 },

    #[error("frame has no members")]
    NoMembers,

    #[error("members[{member}]: {what} has {found} where {expected} was expected")]
    DimensionMismatch {
        member: usize,
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("members[{member}].weight must be positive and finite, got {weight}")]
    NonPositiveWeight { member: usize, weight: f64 },

    #[error("members[{member}].subspace is not orthonormal (residual {residual:e})")]
    NonOrthonormalSubspace { member: usize, residual: f64 },

    #[error("members[{member}]: non-finite entry in {what}")]
    NonFinite { member: usize, what: &'static str },

    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("family is not a frame (lower bound {lower:e}, upper bound {upper:e})")]
    NotAFrame { lower: f64, upper: f64 },

    #[error("frame operator condition number {cond:e} exceeds the limit {limit:e}")]
    IllConditioned { cond: f64, limit: f64 },

    #[error("index {index} out of range for {len} members")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("no frame found after {attempts} attempts (last bounds {lower:e}, {upper:e})")]
    GenerationFailed {
        attempts: usize,
        lower: f64,
        upper: f64,
    },

    #[error("internal consistency check failed: {what} (residual {residual:e})")]
    Inconsistent { what: &'static str, residual: f64 },
}

impl Error {
    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }
}
