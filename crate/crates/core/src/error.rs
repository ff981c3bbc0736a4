use thiserror::Error;

/// Library-wide error type. Each variant carries a stable machine-readable
/// code (see [`Error::code`]) so the CLI can map failures to exit classes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("E_NOT_PRIME: {0} is not a prime modulus")]
    NotPrime(u64),
    #[error("E_UNKNOWN_FAMILY: unknown variable family `{family}`")]
    UnknownFamily { family: String },
    #[error("E_UNKNOWN_VARIABLE: variable `{var}` is not declared in the ring")]
    UnknownVariable { var: String },
    #[error("E_UNBOUND_INDEX_VAR: index variable `{var}` has no lower bound in schema {schema}")]
    UnboundIndexVar { var: String, schema: usize },
    #[error("E_BAD_INDEX: variable index must be >= 1 (got {0})")]
    BadIndex(u64),
    #[error("E_BAD_LEVEL: truncation level must be >= 1 (got {0})")]
    BadLevel(u64),
    #[error("E_RELATION_DEGREE: relation schema {schema} instantiates to degree {degree} < 2")]
    RelationDegree { schema: usize, degree: u32 },
    #[error("E_NON_HOMOGENEOUS: entry at row {row}, column {col} is not homogeneous of degree {expected}")]
    NonHomogeneous { row: usize, col: usize, expected: i64 },
    #[error("E_NON_STANDARD: monomial `{0}` is zero in the quotient ring")]
    NonStandard(String),
    #[error("E_SHAPE: {0}")]
    Shape(String),
    #[error("E_PARSE: {msg} at offset {at}")]
    Parse { msg: String, at: usize },
    #[error("E_JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("E_IO: {0}")]
    Io(#[from] std::io::Error),
    #[error("E_BAD_WINDOW: stability window must be >= 2 (got {0})")]
    BadWindow(usize),
    #[error("E_BAD_PAD: pad step {step} out of range for a resolution with {steps} steps")]
    BadPad { step: usize, steps: usize },
    #[error("E_MODULE_MISMATCH: {0}")]
    ModuleMismatch(String),
    #[error("E_INCOMPATIBLE_PATTERNS: {0}")]
    IncompatiblePatterns(String),
    #[error("E_ENUM_BOUND: degree piece of dimension {dim} exceeds the exhaustive enumeration bound {bound}")]
    EnumBound { dim: usize, bound: usize },
    #[error("E_CAP_INCOMPLETE: kernel at step {step} is cap-incomplete (cap {cap})")]
    CapIncomplete { step: usize, cap: i64 },
    #[error("E_CONFIG: {0}")]
    Config(String),
}

impl Error {
    /// Stable machine-readable code for this error.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "E_NOT_PRIME",
            Error::UnknownFamily { .. } => "E_UNKNOWN_FAMILY",
            Error::UnknownVariable { .. } => "E_UNKNOWN_VARIABLE",
            Error::UnboundIndexVar { .. } => "E_UNBOUND_INDEX_VAR",
            Error::BadIndex(_) => "E_BAD_INDEX",
            Error::BadLevel(_) => "E_BAD_LEVEL",
            Error::RelationDegree { .. } => "E_RELATION_DEGREE",
            Error::NonHomogeneous { .. } => "E_NON_HOMOGENEOUS",
            Error::NonStandard(_) => "E_NON_STANDARD",
            Error::Shape(_) => "E_SHAPE",
            Error::Parse { .. } => "E_PARSE",
            Error::Json(_) => "E_JSON",
            Error::Io(_) => "E_IO",
            Error::BadWindow(_) => "E_BAD_WINDOW",
            Error::BadPad { .. } => "E_BAD_PAD",
            Error::ModuleMismatch(_) => "E_MODULE_MISMATCH",
            Error::IncompatiblePatterns(_) => "E_INCOMPATIBLE_PATTERNS",
            Error::EnumBound { .. } => "E_ENUM_BOUND",
            Error::CapIncomplete { .. } => "E_CAP_INCOMPLETE",
            Error::Config(_) => "E_CONFIG",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
