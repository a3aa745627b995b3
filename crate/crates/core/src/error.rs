use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("zero vector has no canonical form")]
    ZeroVector,

    #[error("index {index} out of range for {len} roots")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("root {index} does not give an integral reflection")]
    NonIntegral { index: usize },

    #[error("invalid root system: {0}")]
    InvalidSystem(String),

    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),

    #[error("bad folding: {0}")]
    BadFolding(String),

    #[error("cone is not full-dimensional")]
    NotFullDimensional,

    #[error("point is outside the closed fundamental chamber")]
    OutsideChamber,

    #[error("step cap must be positive")]
    InvalidStepCap,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("enumeration exceeded the limit of {limit} elements")]
    LimitExceeded { limit: usize },
}
