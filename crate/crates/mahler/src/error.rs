use thiserror::Error;

/// Errors shared by every module of the library.
///
/// Each variant carries a stable machine-readable code (see [`MahlerError::code`])
/// so that frontends can surface failures without parsing messages.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MahlerError {
    #[error("zero input where a nonzero value is required")]
    ZeroInput,

    #[error("division by zero")]
    DivisionByZero,

    #[error("unsupported lambda {0}: the telescoper requires lambda outside {{0, 1}}")]
    UnsupportedLambda(String),

    #[error("pole at the origin admits no consistent finite recursion: {0}")]
    PoleStructure(String),

    #[error("singular system: the matrix must be invertible")]
    SingularSystem,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("radix mismatch: p = {0} vs p = {1}")]
    RadixMismatch(u32, u32),

    #[error("assumption missing: certification requires a Galois-group assumption with provenance")]
    AssumptionMissing,

    #[error("insufficient precision: need at least {needed} coefficients, have {have}")]
    InsufficientPrecision { needed: usize, have: usize },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("invalid equation: {0}")]
    InvalidEquation(String),

    #[error("invalid bounds: {0}")]
    InvalidBounds(String),

    #[error("non-rectangular matrix")]
    NonRectangularMatrix,

    #[error("parse error: {0}")]
    Parse(String),
}

impl MahlerError {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            MahlerError::ZeroInput => "E_ZERO_INPUT",
            MahlerError::DivisionByZero => "E_DIVISION_BY_ZERO",
            MahlerError::UnsupportedLambda(_) => "E_UNSUPPORTED_LAMBDA",
            MahlerError::PoleStructure(_) => "E_POLE_STRUCTURE",
            MahlerError::SingularSystem => "E_SINGULAR_SYSTEM",
            MahlerError::ShapeMismatch(_) => "E_SHAPE_MISMATCH",
            MahlerError::RadixMismatch(_, _) => "E_RADIX_MISMATCH",
            MahlerError::AssumptionMissing => "E_ASSUMPTION_MISSING",
            MahlerError::InsufficientPrecision { .. } => "E_INSUFFICIENT_PRECISION",
            MahlerError::InternalInconsistency(_) => "E_INTERNAL_INCONSISTENCY",
            MahlerError::InvalidEquation(_) => "E_INVALID_EQUATION",
            MahlerError::InvalidBounds(_) => "E_INVALID_BOUNDS",
            MahlerError::NonRectangularMatrix => "E_NON_RECTANGULAR_MATRIX",
            MahlerError::Parse(_) => "E_PARSE",
        }
    }
}

pub type Result<T> = std::result::Result<T, MahlerError>;
