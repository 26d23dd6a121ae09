use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum VpError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point {0} lies outside [-1, 1]")]
    Domain(f64),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("function evaluation returned a non-finite value at x = {0}")]
    NonFinite(f64),

    #[error("integration did not converge: achieved relative change {achieved:e} after {panels} panels")]
    NoConvergence { achieved: f64, panels: usize },

    #[error("inconsistent level chain: {0}")]
    LevelChain(String),

    #[error("malformed data: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, VpError>;

pub(crate) fn check_len(got: usize, expected: usize) -> Result<()> {
    if got == expected {
        Ok(())
    } else {
        Err(VpError::LengthMismatch { expected, got })
    }
}

pub(crate) fn check_domain(x: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(VpError::Domain(x))
    }
}
