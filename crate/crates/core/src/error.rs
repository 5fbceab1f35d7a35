use thiserror::Error;

/// Errors reported by plan construction, transforms and count formulas.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("expected input of length {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("input length {0} is odd")]
    OddLength(usize),
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("size {size} too small: {what} needs at least {min}")]
    SizeTooSmall {
        size: usize,
        min: usize,
        what: &'static str,
    },
    #[error("operation requires an audited execution context")]
    NotAudited,
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_pow2(n: usize) -> Result<()> {
    if n.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::NotPowerOfTwo(n))
    }
}

pub(crate) fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, actual })
    }
}
