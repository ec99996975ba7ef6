use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("vector is not in the interior of the Tits cone")]
    NotInTitsConeInterior,
    #[error("shape is not dominant integral")]
    NotDominant,
    #[error("malformed path: {0}")]
    MalformedPath(String),
    #[error("time {0} outside [0,1]")]
    OutOfRange(String),
    #[error("section boundary at non-integral level {0}")]
    NonIntegralLevel(String),
    #[error("root cutoff {0} too small: count changes at cutoff+1")]
    CutoffTooSmall(i64),
    #[error("weight defect {defect} exceeds depth {depth}")]
    DepthExceeded { defect: i64, depth: usize },
    #[error("word {0:?} is not reduced")]
    NonReducedWord(Vec<usize>),
    #[error("operation needs the affine sl2 datum")]
    NotAffine,
    #[error("stabilization cap {0} exceeded")]
    StabilizationCapExceeded(usize),
    #[error("closure violated: top vertices {0} and {1} differ")]
    ClosureViolation(String, String),
    #[error("diagonal is not active")]
    DiagonalNotActive,
    #[error("support bound {0} too small")]
    BoundTooSmall(usize),
    #[error("no completion of the datum exists")]
    CompletionNotFound,
    #[error("completion of the datum is not unique ({0} candidates)")]
    CompletionNotUnique(usize),
    #[error("crystal operator undefined on this element")]
    OperatorUndefined,
    #[error("reduction to a delta-top element failed")]
    ReductionFailed,
    #[error("no polytope matches the path data")]
    NoMatch,
    #[error("{0} polytopes match the path data")]
    MultipleMatches(usize),
    #[error("decoration hypothesis not met: eps0={eps0}, eps1={eps1}")]
    HypothesisNotMet { eps0: i64, eps1: i64 },
    #[error("delta-top element has both first entries nonzero")]
    DeltaTopAmbiguous,
    #[error("expected {expected} coefficients, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
