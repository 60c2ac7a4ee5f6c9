use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot invert zero")]
    ZeroInverse,
    #[error("lambda = {0} is not allowed (lambda must avoid 0 and 1)")]
    ForbiddenValue(String),
    #[error("denominator vanishes at lambda = {0}")]
    PoleAtValue(String),
    #[error("bad coefficient `{0}`")]
    BadCoefficient(String),

    #[error("duplicate arrow name `{0}`")]
    DuplicateArrowName(String),
    #[error("arrow `{name}` has endpoint {vertex} outside 1..={count}")]
    BadEndpoint { name: String, vertex: usize, count: usize },
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("arrows do not compose: {0}")]
    NotAPath(String),
    #[error("potential term is not a cycle: {0}")]
    NotACycle(String),
    #[error("substitution for `{0}` does not have the arrow's endpoints")]
    EndpointMismatch(String),

    #[error("malformed quiver with potential: {0}")]
    MalformedQp(String),
    #[error("no stabilization up to path length {0}")]
    NotAdmissibleUpTo(usize),
    #[error("relation has a component of length 0 or 1: {0}")]
    InconsistentRelation(String),
    #[error("Cartan matrix is not invertible over the integers (det = {0})")]
    NonInvertibleCartan(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("radical has corank {0}, expected 1")]
    WrongCorank(usize),
    #[error("quadratic form is not non-negative")]
    NotNonNegative,
    #[error("radical vector has entries of both signs")]
    MixedSigns,
    #[error("no recurrence within {0} Coxeter steps")]
    NoPeriod(usize),
    #[error("index is 0/0")]
    Indeterminate,
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("loop at vertex {0}")]
    LoopAtVertex(usize),
    #[error("2-cycle through vertex {0}")]
    TwoCycleThroughK(usize),
    #[error("reduction did not terminate at truncation {0}")]
    ReductionDiverged(usize),
    #[error("mutation produced a degenerate quiver: {0}")]
    Degenerate(String),
    #[error("quiver has {0} vertices; isomorphism search is limited to 16")]
    TooLarge(usize),

    #[error("matrix shapes do not match the quiver: {0}")]
    ShapeMismatch(String),
    #[error("modules live over different algebras")]
    AmbientMismatch,
    #[error("projective resolution has a nonzero third syzygy")]
    ResolutionTooLong,
    #[error("could not lift syzygy generators: {0}")]
    SyzygyLiftFailed(String),

    #[error("potential is not homogeneous of degree 1")]
    NotHomogeneous,
    #[error("arrow degrees must be 0 or 1: {0}")]
    BadDegrees(String),
    #[error("window is too small for an interior projective at {0}")]
    WindowTooSmall(String),

    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("unknown figure `{0}`")]
    UnknownFigure(String),
    #[error("transcription error: {0}")]
    TranscriptionError(String),
    #[error("line {line}, column {column}: {message}")]
    ParseError { line: usize, column: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
