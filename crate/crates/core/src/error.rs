//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CrownError {
    #[error("dimension mismatch: expected {expected}, got {got} ({context})")]
    DimensionMismatch {
        expected: usize,
        got: usize,
        context: &'static str,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The mixed-model linear solve is singular; the point lies outside the
    /// region where the N A exp(itH) exp(iY) factorization is valid.
    #[error("degenerate decomposition at t_i = {t_i}: |cos(t_i/2)| = {cos_half:.3e}, |cos(t_i)| = {cos_full:.3e}")]
    DegenerateDecomposition {
        t_i: f64,
        cos_half: f64,
        cos_full: f64,
    },

    #[error("point outside the crown domain: {0}")]
    OutsideCrown(String),

    #[error("shooting solver did not converge after {iterations} iterations (residual {residual:.3e})")]
    ShootingDidNotConverge { iterations: usize, residual: f64 },

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("fractional-linear action undefined: denominator {0:.3e} vanishes")]
    VanishingDenominator(f64),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CrownError>;
