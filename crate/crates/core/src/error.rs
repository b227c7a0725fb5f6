use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by series algebra and the coefficient machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series constant term must be exactly 1, got {0}")]
    ConstantTermNotOne(Complex64),

    #[error("series constant term must be exactly 0, got {0}")]
    ConstantTermNotZero(Complex64),

    #[error("cannot divide by a series with zero constant term")]
    ZeroConstantTerm,

    #[error("series order {got} is too small, need at least {need}")]
    OrderTooSmall { need: usize, got: usize },

    #[error("alpha must lie in (0, 1), got {0}")]
    AlphaOutOfRange(f64),

    #[error("gamma must lie in (0, 1], got {0}")]
    GammaOutOfRange(f64),

    #[error("|{name}| must be at most 1, got modulus {modulus}")]
    ModulusExceedsOne { name: &'static str, modulus: f64 },

    #[error("c1 must be real with 0 <= c1 <= 1, got {0}")]
    InvalidNormalizedC1(Complex64),

    #[error("{name} must lie in {range}, got {value}")]
    OutOfDomain {
        name: &'static str,
        range: &'static str,
        value: f64,
    },

    #[error("coefficients violate the Schwarz admissibility constraints")]
    InadmissibleCoefficients,

    #[error("invalid search configuration: {0}")]
    InvalidConfig(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
