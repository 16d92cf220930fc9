use thiserror::Error;

/// Errors raised by the algebra, group and covering routines.
///
/// Variants are grouped by how a caller should react: input problems,
/// resource caps (the answer is undetermined, not wrong) and internal
/// consistency failures (which indicate a bug).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different coefficient fields")]
    FieldMismatch,
    #[error("invalid field specification: {0}")]
    InvalidField(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degree {numerator} is not divisible by degree {divisor}")]
    DegreeNotDivisible { numerator: usize, divisor: usize },
    #[error("map is not a Galois covering: {0}")]
    NotGalois(String),
    #[error("deck transformations are not defined over the declared field; adjoin a root of {hint}")]
    FieldTooSmall { hint: String },
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),
    #[error("precision cap of {cap} bits exceeded: {context}")]
    PrecisionCap { cap: u32, context: String },
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("undetermined: {0}")]
    Undetermined(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("deck containment check failed: {0}")]
    DeckContainment(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
