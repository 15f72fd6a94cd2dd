use thiserror::Error;

/// Errors raised by the numerical routines and state constructors.
///
/// Every validation failure names the violated invariant and the offending
/// magnitude so that callers can report it verbatim.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum Error {
    #[error("NotHermitian: max |m - m^dagger| entry is {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("TraceNotOne: trace is {re}{im:+}i")]
    TraceNotOne { re: f64, im: f64 },

    #[error("NotPSD: minimum eigenvalue {min_eigenvalue:e} is below the tolerance")]
    NotPsd { min_eigenvalue: f64 },

    #[error("NotNormalized: squared norm is {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("NonFinite: matrix has a non-finite entry")]
    NonFinite,

    #[error("BadSign: sign parameter must be +1 or -1, got {0}")]
    BadSign(f64),

    #[error("BadProbability: {0} is not in [0, 1]")]
    BadProbability(f64),

    #[error("BadRank: rank {0} is not in 1..=4")]
    BadRank(usize),

    #[error("NotARotation: orthogonality defect {orthogonality:e}, determinant {determinant}")]
    NotARotation { orthogonality: f64, determinant: f64 },

    #[error("NotUnitary: max |U U^dagger - I| entry is {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("NumericalFailure: {0}")]
    NumericalFailure(&'static str),

    #[error("OutOfRange: {value} is outside [{min}, {max}]")]
    OutOfRange { value: f64, min: f64, max: f64 },

    #[error("BadResolution: grid must have at least 8 steps, got {0}")]
    BadResolution(usize),

    #[error("ZeroCorrelation: correlation matrix vanishes")]
    ZeroCorrelation,

    #[error("DegenerateTheta: theta = {0} is within 1e-6 of pi/4, where the pair collapses")]
    DegenerateTheta(f64),
}

pub type Result<T> = core::result::Result<T, Error>;
