use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 1, got {0}")]
    InvalidModulus(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("relation row {0} does not lie in the span of the generators")]
    RelationNotInSpan(usize),
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("spec parse error at {position}: {message}")]
    SpecParse { position: String, message: String },
    #[error("{what} of size {size} exceeds cap {cap}")]
    CapExceeded { what: String, size: u128, cap: u128 },
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("not a subgroup of the acting group: {0}")]
    NotASubgroup(String),
    #[error("incompatible actions: {0}")]
    IncompatibleActions(String),
    #[error("action mismatch: {0}")]
    ActionMismatch(String),
    #[error("element {0} is not fixed by the acting group")]
    NotFixed(usize),
    #[error("element {element} is not a preimage of {target}")]
    NotAPreimage { element: usize, target: usize },
    #[error("datum is not tame: gcd(q = {q}, n = {n}) != 1")]
    NotTame { q: u64, n: u64 },
    #[error("residues are incongruent: {q_v} and {q_w} differ modulo {n}")]
    IncongruentResidues { q_v: u64, q_w: u64, n: u64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Variant name, stable across message wording changes.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::RelationNotInSpan(_) => "RelationNotInSpan",
            Error::InvalidTable(_) => "InvalidTable",
            Error::SpecParse { .. } => "SpecParse",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::NotAHomomorphism(_) => "NotAHomomorphism",
            Error::InvalidAction(_) => "InvalidAction",
            Error::InvalidModule(_) => "InvalidModule",
            Error::NotASubgroup(_) => "NotASubgroup",
            Error::IncompatibleActions(_) => "IncompatibleActions",
            Error::ActionMismatch(_) => "ActionMismatch",
            Error::NotFixed(_) => "NotFixed",
            Error::NotAPreimage { .. } => "NotAPreimage",
            Error::NotTame { .. } => "NotTame",
            Error::IncongruentResidues { .. } => "IncongruentResidues",
            Error::Unsupported(_) => "Unsupported",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    pub(crate) fn cap(what: impl Into<String>, size: u128, cap: u128) -> Self {
        Error::CapExceeded { what: what.into(), size, cap }
    }

    pub(crate) fn parse(position: impl Into<String>, message: impl Into<String>) -> Self {
        Error::SpecParse { position: position.into(), message: message.into() }
    }
}
