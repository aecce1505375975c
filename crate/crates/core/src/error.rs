use std::path::PathBuf;

/// Errors shared by every module in this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("resource limit: requested {what} {requested} exceeds the configured maximum {max}")]
    ResourceLimit {
        what: &'static str,
        requested: u64,
        max: u64,
    },

    #[error("too short input: need at least {min} elements, got {got}")]
    TooShortInput { min: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-monotone points: entry {index} does not increase")]
    NonMonotone { index: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("window too small: interior length {interior} cannot support max lag {max_lag}")]
    WindowTooSmall { interior: usize, max_lag: usize },

    #[error("zero variance: signal is constant over the window ({0}, {1})")]
    ZeroVariance(i64, i64),

    #[error("no minimum: no local minimum with prominence {prominence} found")]
    NoMinimum { prominence: f64 },

    #[error("no peak: spectrum has no usable nonzero-frequency peak")]
    NoPeak,

    #[error("no linear segment: even the first three lags fail the fit threshold {threshold}")]
    NoLinearSegment { threshold: f64 },

    #[error("divergence: trajectory left the bounding box at t = {t}")]
    Divergence { t: f64 },

    #[error("degenerate horizon: integration span from {start} to {end} holds no samples")]
    DegenerateHorizon { start: f64, end: f64 },

    #[error("insufficient primes: {supplied} primes reach n = {reached} but the run needs n = {needed} (try about {required} primes)")]
    InsufficientPrimes {
        supplied: usize,
        reached: u64,
        needed: u64,
        required: usize,
    },

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl Error {
    /// Short machine-readable name, used by the CLI when reporting exit code 2.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ResourceLimit { .. } => "resource-limit",
            Error::TooShortInput { .. } => "too-short-input",
            Error::Domain(_) => "domain",
            Error::NonMonotone { .. } => "non-monotone",
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::WindowTooSmall { .. } => "window-too-small",
            Error::ZeroVariance(..) => "zero-variance",
            Error::NoMinimum { .. } => "no-minimum",
            Error::NoPeak => "no-peak",
            Error::NoLinearSegment { .. } => "no-linear-segment",
            Error::Divergence { .. } => "divergence",
            Error::DegenerateHorizon { .. } => "degenerate-horizon",
            Error::InsufficientPrimes { .. } => "insufficient-primes",
            Error::Io { .. } => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
