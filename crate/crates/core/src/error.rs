use alloc::string::String;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("operands belong to different rings")]
    MixedRings,
    #[error("binom({value}, {k}) has no solution in the ring")]
    NonBinomial { value: String, k: u32 },
    #[error("{value} is not divisible by {divisor}")]
    NotDivisible { value: String, divisor: String },
    #[error("{value} is not an element of the {ring} ring")]
    NotInRing { value: String, ring: String },
    #[error("expected {expected} arguments, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("series has constant term other than 1")]
    NotGroupLike,
    #[error("series is not the image of a group element")]
    NotInGroup,
    #[error("rank {0} is below 2")]
    BadRank(usize),
    #[error("class {0} is below 1")]
    BadClass(usize),
    #[error("weight {k} exceeds class {c}")]
    OutOfClass { k: usize, c: usize },
    #[error("rank {r} + class {c} exceeds the scale limit {limit}")]
    ScaleLimit { r: usize, c: usize, limit: usize },
    #[error("polynomial is not integer-valued: coefficient {0} in the binomial basis")]
    NonIntegerCoefficient(String),
    #[error("cocycle check failed: {0}")]
    CocycleViolation(String),
    #[error("coboundary splitting failed at ({a}, {b})")]
    SplitFailure { a: String, b: String },
    #[error("map is not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("invalid index {0}")]
    InvalidIndex(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("duplicate variable name {0:?}")]
    DuplicateVariable(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
