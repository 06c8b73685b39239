use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("sequence must have at least one entry")]
    EmptySequence,

    #[error("entry {index} has |x|^2 = {modulus_sq}, sequence is not unimodular")]
    NotUnimodular { index: usize, modulus_sq: f64 },

    #[error("sequence lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("sequence set must have at least one member")]
    EmptySet,

    #[error("delay {tau} out of range for length {n}")]
    DelayOutOfRange { tau: i64, n: usize },

    #[error("Doppler bin {nu} out of range for length {n}")]
    DopplerOutOfRange { nu: i64, n: usize },

    #[error("LAZ ({z_x}, {z_y}) invalid for length {n}: need 1 <= Zx, Zy <= N")]
    InvalidLaz { z_x: usize, z_y: usize, n: usize },

    #[error("dimension mismatch for {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("weights sum to {sum}, not 1")]
    WeightSum { sum: f64 },

    #[error("weight {index} is negative ({value})")]
    NegativeWeight { index: usize, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("Chu root {a} invalid for length {n}: need a != 0 and |a| <= N-1")]
    InvalidRoot { a: i64, n: usize },

    #[error("search space {size} exceeds budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
