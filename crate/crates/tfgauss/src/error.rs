use thiserror::Error;

/// Errors across weight analysis, transforms, operators and the batch runner.
#[derive(Debug, Error)]
pub enum Error {
    #[error("weight sample at xi = {xi} is negative ({value})")]
    NegativeWeight { xi: f64, value: f64 },

    #[error("weight sample at xi = {xi} is not finite")]
    NonFiniteWeight { xi: f64 },

    #[error("point xi = {xi} lies outside the weight domain [-{halfwidth}, {halfwidth}]")]
    OutOfDomain { xi: f64, halfwidth: f64 },

    #[error("weight vanishes at xi = {xi}; the multiplicative modulus of continuity needs w > 0")]
    ZeroWeightSample { xi: f64 },

    #[error("modulus-of-continuity curve has no delta > 0 entries")]
    EmptyCurve,

    #[error("grid count {count} is not a power of two >= 4")]
    NonPowerOfTwo { count: usize },

    #[error("grid step/halfwidth pair is inconsistent: {msg}")]
    BadGrid { msg: String },

    #[error("signals live on different grids")]
    GridMismatch,

    #[error("signal is identically zero")]
    ZeroSignal,

    #[error("test family is empty")]
    EmptyFamily,

    #[error("shift eta = {eta} is not a grid multiple (step {step})")]
    OffGridShift { eta: f64, step: f64 },

    #[error("kernel row/column integral exceeds the overflow threshold")]
    InfiniteBound,

    #[error("modulus-of-continuity table does not cover delta = {delta}")]
    MissingMmc { delta: f64 },

    #[error("gram matrix is numerically singular (min eig {min_eig:e}, max eig {max_eig:e})")]
    SingularGram { min_eig: f64, max_eig: f64 },

    #[error("pursuit stagnated at iteration {iteration}: best atom improves the residual by less than 1e-14 relative")]
    StagnatedPursuit { iteration: usize },

    #[error("signal has non-finite weighted norm; not a member of the space on this grid")]
    NotInSpace,

    #[error("atom (alpha={alpha}, tau={tau}) carries mass > 1e-10 outside the grid window")]
    AtomOutsideDomain { alpha: f64, tau: f64 },

    #[error("invalid parameter: {msg}")]
    InvalidParameter { msg: String },

    #[error("validation failed: {msg}")]
    Validation { msg: String },

    #[error("config error: {msg}")]
    Config { msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config { msg: msg.into() }
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation { msg: msg.into() }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter { msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
