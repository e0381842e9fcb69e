use crate::Nat;

/// Everything that can go wrong while evaluating or checking a functional.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("fuel exhausted after {budget} steps")]
    FuelExhausted { budget: u64 },

    #[error("index {index} out of range for sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("natural number overflow")]
    Overflow,

    #[error("no stable depth found up to nmax = {nmax}")]
    StabilizationFailed { nmax: Nat },

    #[error("Gandy-Hyland equation violated at {seq}")]
    GhEquationViolated { seq: String },

    #[error("tree search bound {bound} exceeds depth cap {depth}")]
    DepthExceeded { bound: Nat, depth: Nat },

    #[error("query not covered by the recorded trace")]
    OutOfTableQuery,

    #[error("value {value} at position {index} exceeds certified bound {bound}")]
    BoundExceeded { index: Nat, value: Nat, bound: Nat },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error at line {line}, column {column} (offset {offset}): {message}")]
    Parse {
        line: usize,
        column: usize,
        offset: usize,
        message: String,
    },

    #[error("`{name}` expects {expected} argument(s), found {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("functional `{0}` has no modulus oracle")]
    MissingModulus(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("malformed json: {0}")]
    Json(String),
}

impl Error {
    /// Stable short name used in result records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::FuelExhausted { .. } => "FuelExhausted",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::Overflow => "Overflow",
            Error::StabilizationFailed { .. } => "StabilizationFailed",
            Error::GhEquationViolated { .. } => "GhEquationViolated",
            Error::DepthExceeded { .. } => "DepthExceeded",
            Error::OutOfTableQuery => "OutOfTableQuery",
            Error::BoundExceeded { .. } => "BoundExceeded",
            Error::InvariantViolation(_) => "InvariantViolation",
            Error::Parse { .. } => "ParseError",
            Error::Arity { .. } => "ArityError",
            Error::MissingModulus(_) => "MissingModulus",
            Error::Usage(_) => "UsageError",
            Error::Io(_) => "IoError",
            Error::Json(_) => "JsonError",
        }
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::FuelExhausted { .. }
                | Error::StabilizationFailed { .. }
                | Error::DepthExceeded { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
