use thiserror::Error;

/// Errors raised by the quadrature engine, the Wright evaluator and the
/// series oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid interval [{lower}, {upper}]: upper bound must exceed lower bound")]
    InvalidInterval { lower: f64, upper: f64 },

    #[error("refinement level {level} exceeds max_level {max_level}")]
    LevelOutOfRange { level: u32, max_level: u32 },

    #[error("integrand returned a non-finite value ({value}) at x = {x}")]
    NonFiniteIntegrand { x: f64, value: f64 },

    #[error("invalid Wright parameters (a = {a}, b = {b}): {reason}")]
    Domain { a: f64, b: f64, reason: &'static str },

    #[error("exponent {exponent} overflows the double-precision range")]
    Overflow { exponent: f64 },

    #[error("{what}: integrand overflowed at {at} for a = {a}, b = {b}, z = {z}")]
    Range {
        what: &'static str,
        a: f64,
        b: f64,
        z: f64,
        at: f64,
    },

    #[error("series did not converge after {terms} terms (last term magnitude {tail_bound:e})")]
    SeriesNonConvergence { terms: usize, tail_bound: f64 },

    #[error(
        "series is outside its reliable region: rounding bound {rounding_bound:e} vs sum {sum:e}"
    )]
    SeriesUnreliable { rounding_bound: f64, sum: f64 },

    #[error("quadrature did not converge: value {value}, error estimate {error_estimate:e}")]
    NotConverged { value: f64, error_estimate: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
