use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("order {k} exceeds the band limit {limit} of the grid")]
    BandLimit { k: usize, limit: usize },

    #[error("function does not decay at the grid edges (edge/peak ratio {ratio:.3e})")]
    EdgeDecay { ratio: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("fit error: {0}")]
    Fit(String),

    #[error("envelope diverges at t = {t}")]
    Divergent { t: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
