use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set of {size} elements exceeds the cap of {cap}")]
    GroundTooLarge { size: usize, cap: usize },
    #[error("bad label: {0}")]
    BadLabel(String),
    #[error("unknown label: {0}")]
    UnknownLabel(String),
    #[error("ground set mismatch")]
    GroundMismatch,
    #[error("not a half set: {0}")]
    NotHalfSet(String),
    #[error("preacycloid axiom {axiom} fails at {witness}")]
    AxiomViolation { axiom: &'static str, witness: String },
    #[error("not an acycloid: {0}")]
    NotAcycloid(String),
    #[error("tope not found: {0}")]
    TopeNotFound(String),
    #[error("not simple: {0}")]
    NotSimple(String),
    #[error("not a hemispace: {0}")]
    NotHemispace(String),
    #[error("bad minor partition: {0}")]
    BadPartition(String),
    #[error("exhaustive check over {size} elements exceeds the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("vector {0} is zero")]
    ZeroVector(usize),
    #[error("vectors {0} and {1} coincide up to negation")]
    DuplicateAfterNegation(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("empty tope family")]
    EmptyTopeFamily,
    #[error("bad loop split: {0}")]
    BadLoopSplit(String),
    #[error("prerequisite failed: {0}")]
    PrerequisiteFailed(String),
    #[error("not antipodal at object {0}")]
    NotAntipodal(String),
    #[error("not faithful: {0}")]
    NotFaithful(String),
    #[error("group exceeds the cap of {0} elements")]
    GroupCapExceeded(usize),
    #[error("root list is not closed under negation at vector {0}")]
    NotNegationClosed(usize),
    #[error("reflection {0} does not permute the roots")]
    ReflectionNotClosed(usize),
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    #[error("squares do not share an edge: {0}")]
    EdgeMismatch(String),
    #[error("signed groupoid set is not complete: {0}")]
    NotComplete(String),
    #[error("morphism {index} is not orthogonal to the current bound")]
    NotOrthogonal { index: usize },
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("join does not exist: {0}")]
    MissingJoin(String),
    #[error("inconsistent results: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
