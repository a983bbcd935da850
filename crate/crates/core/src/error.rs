use thiserror::Error;

/// Errors raised by the exact geometry and lattice routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("polyhedron is empty")]
    Empty,
    #[error("polytope is not full-dimensional")]
    Degenerate,
    #[error("origin is not an interior point")]
    OriginNotInterior,
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("fan is not simplicial")]
    NotSimplicial,
    #[error("fan is not complete")]
    NotComplete,
    #[error("no ample divisor exists on this fan")]
    NoAmpleDivisor,
    #[error("divisor is not ample")]
    NotAmple,
    #[error("fan does not have Picard rank one")]
    NotRankOne,
    #[error("rays do not span the ambient space")]
    RaysDoNotSpan,
    #[error("cone is not simplicial and full-dimensional")]
    NotSimplicialCone,
    #[error("cone {0:?} is not a maximal cone of the fan")]
    ConeNotInFan(Vec<usize>),
    #[error("invalid boundary: {0}")]
    InvalidBoundary(String),
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal verification failed: {0}")]
    InternalVerificationFailed(String),
    #[error("equivalence violated: {0}")]
    EquivalenceViolation(String),
}

impl Error {
    /// Stable identifier used in machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotSquare { .. } => "NotSquare",
            Error::SingularMatrix => "SingularMatrix",
            Error::Unbounded => "Unbounded",
            Error::Empty => "Empty",
            Error::Degenerate => "Degenerate",
            Error::OriginNotInterior => "OriginNotInterior",
            Error::InvalidFan(_) => "InvalidFan",
            Error::NotSimplicial => "NotSimplicial",
            Error::NotComplete => "NotComplete",
            Error::NoAmpleDivisor => "NoAmpleDivisor",
            Error::NotAmple => "NotAmple",
            Error::NotRankOne => "NotRankOne",
            Error::RaysDoNotSpan => "RaysDoNotSpan",
            Error::NotSimplicialCone => "NotSimplicialCone",
            Error::ConeNotInFan(_) => "ConeNotInFan",
            Error::InvalidBoundary(_) => "InvalidBoundary",
            Error::InvalidDivisor(_) => "InvalidDivisor",
            Error::InvalidInput(_) => "InvalidInput",
            Error::InternalVerificationFailed(_) => "InternalVerificationFailed",
            Error::EquivalenceViolation(_) => "EquivalenceViolation",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
