use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("gambles live on different spaces: {0} vs {1}")]
    SpaceMismatch(String, String),
    #[error("sequence length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("sequence length {0} exceeds the permutation enumeration cap {1}")]
    PermutationCap(usize, usize),
    #[error("invalid permutation image: {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("outcome labels are not distinct: {0:?}")]
    DuplicateOutcome(String),
    #[error("empty outcome space")]
    EmptyOutcomeSpace,
    #[error("option set must be non-empty")]
    EmptyOptionSet,
    #[error("duplicate gamble in option set")]
    DuplicateOption,
    #[error("gamble value vector has length {got}, space has {expected} sequences")]
    ValueCount { expected: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("target degree {target} is below the polynomial degree {degree}")]
    DegreeTooSmall { degree: usize, target: usize },
    #[error("comparison degree {0} is below the degree of one of the operands")]
    ComparisonDegreeTooSmall(usize),
    #[error("zero gamble is not allowed as a generator")]
    ZeroGenerator,
    #[error("assessment is incoherent; exchangeability is undefined for it")]
    IncoherentAssessment,
    #[error("assessment is not exchangeable; representation is undefined for it")]
    NotExchangeable,
    #[error("choice table domain is missing the pair {{0, u}} for pool option {0}")]
    MissingZeroPair(usize),
    #[error("choice table pool does not contain the zero gamble")]
    MissingZeroOption,
    #[error("chosen subset is not contained in its option set (entry {0})")]
    ChosenNotSubset(usize),
    #[error("option index {0} is out of range for the pool")]
    BadOptionIndex(usize),
    #[error("representation is not well defined: {0}")]
    RepresentationConflict(String),
    #[error("representing table has no entry for the requested option set")]
    UnknownRepresentationKey,
    #[error("cylindrical extension target {target} is below the gamble degree {degree}")]
    ExtensionTooShort { degree: usize, target: usize },
    #[error("generator of degree {degree} exceeds the horizon {horizon}")]
    DegreeAboveHorizon { degree: usize, horizon: usize },
    #[error("oracle budget exceeded: {0}")]
    OracleBudget(String),
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("invalid input: {0}")]
    BadInput(String),
}
