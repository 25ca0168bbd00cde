use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("minimal polynomial of {field} is reducible: common factor {factor}")]
    ReducibleMinpoly { field: String, factor: String },

    #[error("inexact division: remainder is nonzero")]
    InexactDivision,

    #[error("inputs are projectively equal")]
    ProportionalInputs,

    #[error("zero coordinate triple")]
    ZeroTriple,

    #[error("unsupported n-gon size {0} (expected 8, 10 or 12)")]
    UnsupportedN(u32),

    #[error("invalid selector: {0}")]
    InvalidSelector(String),

    #[error("repeated component at index {0}")]
    RepeatedComponent(usize),

    #[error("cubics through the points form a space of dimension {0}, not a pencil")]
    NotAPencil(usize),

    #[error("intersection of {pair} is not defined over the field: residual factor {factor}")]
    NotInField { pair: String, factor: String },

    #[error("non-ordinary singularity at {point}: {reason}")]
    NonOrdinarySingularity { point: String, reason: String },

    #[error("not a realization: nonbasis {triple:?} has nonzero determinant")]
    NotARealization { triple: [usize; 3] },

    #[error("no usable prime found: {0}")]
    NoGoodPrime(String),

    #[error("reconstruction failed: {0}")]
    Reconstruction(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("negative multiplicity for q = {0}")]
    NegativeMultiplicity(usize),

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl Error {
    /// Short machine-readable tag used in CLI error payloads.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::FieldMismatch(..) => "FieldMismatch",
            Error::DivisionByZero => "DivisionByZero",
            Error::ReducibleMinpoly { .. } => "ReducibleMinpoly",
            Error::InexactDivision => "InexactDivision",
            Error::ProportionalInputs => "ProportionalInputs",
            Error::ZeroTriple => "ZeroTriple",
            Error::UnsupportedN(_) => "UnsupportedN",
            Error::InvalidSelector(_) => "InvalidSelector",
            Error::RepeatedComponent(_) => "RepeatedComponent",
            Error::NotAPencil(_) => "NotAPencil",
            Error::NotInField { .. } => "NotInField",
            Error::NonOrdinarySingularity { .. } => "NonOrdinarySingularity",
            Error::NotARealization { .. } => "NotARealization",
            Error::NoGoodPrime(_) => "NoGoodPrime",
            Error::Reconstruction(_) => "Reconstruction",
            Error::Parse(_) => "Parse",
            Error::NegativeMultiplicity(_) => "NegativeMultiplicity",
            Error::Io(_) => "Io",
        }
    }
}
