use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {op} got {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix dimension must be at least 1")]
    Empty,
    #[error("matrix is not Hermitian: ||H - H*||_F = {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("Hermitian eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error(
        "Gram matrix is not positive definite; basis is linearly dependent (near-null combination {null_vector:?})"
    )]
    DependentBasis { null_vector: Vec<num_complex::Complex64> },
    #[error("matrix is not positive definite (Cholesky pivot {pivot:.3e} at index {index})")]
    NotPositiveDefinite { index: usize, pivot: f64 },
    #[error("matrix is significantly indefinite: smallest eigenvalue {min_eigenvalue:.3e}, allowed {allowed:.3e}")]
    Indefinite { min_eigenvalue: f64, allowed: f64 },
    #[error("matrix is singular")]
    Singular,
    #[error("zero matrix where a nonzero one is required")]
    ZeroMatrix,
    #[error("group closure exceeded the element cap of {cap}")]
    ClosureCapExceeded { cap: usize },
    #[error("degree {degree} exceeds the brute-force limit of {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("identity permutation cannot be a permutation-difference basis element")]
    IdentityInBasis,
    #[error("generator basis is empty")]
    EmptyBasis,
    #[error("every basis element vanished under deflation")]
    BasisExhausted,
    #[error("first group is not a subgroup of the second")]
    NotSubgroup,
    #[error("unknown graph label {0:?}")]
    UnknownGraph(String),
    #[error("spectrum is flat; every generator commutes with the covariance")]
    FlatSpectrum,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// True for failures of the numerics (as opposed to malformed input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::DependentBasis { .. }
                | Error::NotPositiveDefinite { .. }
                | Error::Indefinite { .. }
                | Error::Singular
                | Error::ClosureCapExceeded { .. }
        )
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
