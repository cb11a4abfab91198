use thiserror::Error;

use crate::algebra::Variable;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grade must be at least 2, got {0}")]
    InvalidGrade(u32),
    #[error("operands belong to different algebra contexts")]
    ContextMismatch,
    #[error("variable {0} appears more than once in the integration order")]
    RepeatedVariable(Variable),
    #[error("level count {levels} exceeds the grade {grade}")]
    LevelsExceedGrade { levels: usize, grade: u32 },
    #[error("site dimension must be at least 2, got {0}")]
    InvalidDimension(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("residual Grassmann content after integration ({terms} terms, norm {norm:.3e})")]
    ResidualGrassmann { terms: usize, norm: f64 },
    #[error("state has zero norm")]
    ZeroState,
    #[error("weight basis is empty")]
    EmptyBasis,
    #[error("degenerate coherent pair: alpha equals beta")]
    DegeneratePair,
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("site index {0} out of range")]
    SiteOutOfRange(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
