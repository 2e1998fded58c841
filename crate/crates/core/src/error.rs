//! Error type shared by every module.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("symbol is singular at ξ = 0: {0}")]
    SingularSymbol(String),

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("{what} did not converge after {iterations} iterations (last residual {residual:e})")]
    NonConvergence {
        what: String,
        iterations: usize,
        residual: f64,
        history: Vec<f64>,
    },

    #[error("quadrature failed: {what} (error estimate {estimate:e})")]
    Quadrature { what: String, estimate: f64 },

    #[error("numerical disagreement: {0}")]
    Numerical(String),

    #[error("supercritical exponent: α = {alpha} ≥ α_max(s = {s}) = {alpha_max}")]
    Supercritical { s: f64, alpha: f64, alpha_max: f64 },

    #[error("sector too large for dense eigensolver: dimension {dim} > {cap}")]
    SectorTooLarge { dim: usize, cap: usize },

    #[error("decay anomaly: fitted exponent {fitted} vs expected {expected}")]
    DecayAnomaly { fitted: f64, expected: f64 },

    #[error("solution quality: {0}")]
    SolutionQuality(String),

    #[error("linear algebra: {0}")]
    LinearAlgebra(String),

    #[error("aliasing: {0}")]
    Aliasing(String),

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("property violated: {0}")]
    Property(String),

    #[error("Newton failure at s = {s}: {detail}")]
    NewtonFailure { s: f64, detail: String },

    #[error("monitor {monitor} failed at s = {s}: {detail}")]
    MonitorFailure { monitor: String, s: f64, detail: String },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}
