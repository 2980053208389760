use crate::field::Mode;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degree overflow: {0} + {1} exceeds 5")]
    DegreeOverflow(usize, usize),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("scalar mode mismatch: {0} vs {1}")]
    ModeMismatch(Mode, Mode),
    #[error("float values cannot be converted to exact scalars")]
    FloatToExact,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("curvature not Λ²₃-valued (residual {0:e})")]
    RangeCondition(f64),
    #[error("bivector not in Λ²₃ (residual {0:e})")]
    NotInL23(f64),
    #[error("frame is not adapted")]
    NotAdapted,
    #[error("not a rotation: {0}")]
    NotRotation(String),
    #[error("vertical part not orthogonal to σ")]
    NotVertical,
    #[error("σ is not on the twistor sphere |σ|² = 5")]
    OffSphere,
    #[error("invalid tensor: {0}")]
    InvalidTensor(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
