use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pixel buffer holds {found} values, expected {expected}")]
    PixelCount { expected: usize, found: usize },
    #[error("image is {width}x{height}; a square image is required")]
    NotSquare { width: usize, height: usize },
    #[error("image side {0} is not a positive multiple of 8")]
    NotBlockAligned(usize),
    #[error("block grid side {found} does not match expected side {expected}")]
    GridMismatch { expected: usize, found: usize },
    #[error("bit matrix needs side >= 1 and {expected} bits, got side {side} with {found} bits")]
    BitCount {
        side: usize,
        expected: usize,
        found: usize,
    },
    #[error("bit value {0} is not 0 or 1")]
    NotBinary(u8),
    #[error("operands have mismatched lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("logistic orbit degenerated at step {step} (x = {value}); choose a different x0")]
    OrbitCollapse { step: usize, value: f64 },
    #[error("orbit is not chaotic enough (Lyapunov exponent {exponent:.3} < {minimum}); choose another mu or x0")]
    WeakChaos { exponent: f64, minimum: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParam(&'static str),
    #[error("watermark needs {needed} blocks but the image only has {available}")]
    WatermarkTooLarge { needed: usize, available: usize },
    #[error("normalized correlation is undefined for an all-zero operand")]
    UndefinedNc,
}
