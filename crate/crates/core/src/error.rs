use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows, {cols} columns")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian: asymmetry {asymmetry:e} exceeds {tol:e}")]
    NotHermitian { asymmetry: f64, tol: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix is numerically singular: s_min/s_max = {ratio:e}")]
    Singular { ratio: f64 },

    #[error("matrix is not positive definite: lambda_min = {lambda_min:e}, lambda_max = {lambda_max:e}")]
    NotPositiveDefinite { lambda_min: f64, lambda_max: f64 },

    #[error("matrix is not accretive: lambda_min(Re A) = {margin:e}")]
    NotAccretive { margin: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),

    #[error("generator rejected {attempts} samples for conditioning")]
    Conditioning { attempts: usize },

    #[error("evaluating {id}: {message}")]
    Evaluation { id: String, message: String },

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}: {message}")]
    Format { context: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
