use thiserror::Error;

#[derive(Debug, Error)]
pub enum RcspError {
    #[error("cost vector length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("distance and time layers disagree: {0}")]
    TopologyMismatch(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("tightness {numerator}/{denominator} is outside [0, 1]")]
    InvalidTightness { numerator: u64, denominator: u64 },

    #[error("enumeration exceeded {limit} partial paths; use a smaller instance")]
    EnumerationBudget { limit: usize },

    #[error("broken parent chain at label {label}")]
    BrokenParentChain { label: u32 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = RcspError> = std::result::Result<T, E>;
