use thiserror::Error;

/// Errors raised by the matrix, tomography and star-product routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: dimension mismatch between {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{op}: expected a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("expected {expected} entries, got {got}")]
    InvalidLength { expected: usize, got: usize },

    #[error("polar angle {0} is outside [0, pi]")]
    ThetaOutOfRange(f64),

    #[error("angle {0} is not finite")]
    NonFiniteAngle(f64),

    #[error("number of modes {modes} is outside the supported range 1..={max}")]
    ModesOutOfRange { modes: usize, max: usize },

    #[error("mode index {index} is outside 1..={modes}")]
    ModeIndexOutOfRange { index: usize, modes: usize },

    #[error("expected {expected} modes, got {got}")]
    ModeCountMismatch { expected: usize, got: usize },

    #[error("a tomographic point needs at least one mode")]
    EmptyPoint,

    #[error("quadrature is exact to degree {degree}, at least {required} is required")]
    InsufficientQuadrature { degree: usize, required: usize },

    #[error("not a density matrix: {0}")]
    InvalidDensity(String),

    #[error("star product over {modes} modes exceeds the default limit of {max}; enable large star products explicitly")]
    StarTooLarge { modes: usize, max: usize },

    #[error("mode indices must be distinct, got {0} twice")]
    RepeatedMode(usize),

    #[error("unknown operator name {0:?}")]
    UnknownOperator(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
