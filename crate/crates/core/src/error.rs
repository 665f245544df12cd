use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index ({index}) out of range 1..={size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The trailing principal minor of size `k` vanishes, so the matrix has
    /// no (unit upper) x (diagonal) x (unit lower) factorization.
    #[error("trailing principal minor of size {0} is singular")]
    SingularMinor(usize),

    /// A diagonal entry needing a principal square root sits on the negative
    /// real axis (1-based position).
    #[error("principal square root branch cut hit at index {0}")]
    BranchCut(usize),

    /// G_j vanishes (1-based j).
    #[error("G_{0} vanishes")]
    ZeroG(usize),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("non-invertible diagonal entry at index {0}")]
    NonInvertibleDiagonal(usize),

    #[error("constraint violated: {0}")]
    ConstraintViolated(String),

    /// A spin copy lies outside the guarded neighbourhood of zero.
    #[error("copy {copy}: |a|*|b| = {product:.4} exceeds the domain guard {bound}")]
    DomainGuard { copy: usize, product: f64, bound: f64 },

    #[error("probe point left the domain of the map: {0}")]
    DomainEscape(Box<Error>),

    #[error("supplied derivative disagrees with finite differences at t = {t}: {detail}")]
    DerivativeMismatch { t: String, detail: String },

    #[error("function evaluation failed: {0}")]
    Evaluation(String),

    #[error("copy {copy}: {source}")]
    InCopy { copy: usize, source: Box<Error> },

    #[error("factorization step alpha = {step}: {source}")]
    InStep { step: usize, source: Box<Error> },
}

impl Error {
    pub(crate) fn in_copy(copy: usize) -> impl FnOnce(Error) -> Error {
        move |e| Error::InCopy { copy, source: Box::new(e) }
    }

    pub(crate) fn in_step(step: usize) -> impl FnOnce(Error) -> Error {
        move |e| Error::InStep { step, source: Box::new(e) }
    }
}
