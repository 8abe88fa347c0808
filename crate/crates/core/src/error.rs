use thiserror::Error;

/// Errors surfaced by the exact kernels and the geometry layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("matrix/vector shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("affine system has no solution")]
    InconsistentSystem,
    #[error("dimension {0} exceeds the exact-copositivity limit {1}")]
    DimensionTooLarge(usize, usize),
    #[error("empty input")]
    EmptyInput,
    #[error("inequality system is unbounded")]
    Unbounded,
    #[error("inequality system is infeasible")]
    Infeasible,
    #[error("origin is not interior to the polytope")]
    OriginNotInterior,
    #[error("projective denominator 1 + <c,x> vanishes or changes sign on the polytope")]
    ProjectiveDenominatorVanishes,
    #[error("matrix has a negative entry at ({0},{1})")]
    NegativeEntry(usize, usize),
    #[error("hull data inconsistent: {0}")]
    HullDataInconsistent(String),
    #[error("denominator vanishes on a vertex")]
    DenominatorVanishes,
    #[error("factorization does not verify against the slack matrix")]
    FactorizationInvalid,
    #[error("recovery map is not unique; the lifted set projects to an unbounded image")]
    RecoveryNotUnique,
    #[error("lift is not proper: coordinates {0:?} vanish on the whole slice")]
    NotProper(Vec<usize>),
    #[error("fiber of vertex {0} is empty")]
    FiberEmpty(usize),
    #[error("transformed lift is degenerate")]
    DegenerateImage,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("cone kinds do not match: {0}")]
    ConeMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
