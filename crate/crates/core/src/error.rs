use thiserror::Error;

/// Errors raised by the classifier, the spectral solvers and the certificate checks.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("scaling undefined at p=1")]
    ScalingUndefined,

    #[error("no real indicial roots: potential exceeds the Hardy-spectral threshold")]
    NoRealRoots,

    #[error("resonant or indefinite angular problem (c = {c}, lambda1 = {lambda1})")]
    Resonant { c: f64, lambda1: f64 },

    #[error("no barrier: verdict is {0}")]
    NoBarrier(String),

    #[error("barrier not positive at r = {r}, omega = {omega}")]
    NonPositiveBarrier { r: f64, omega: f64 },

    #[error("angular profile unavailable for a tabulated cone")]
    ProfileUnavailable,

    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("double root at k=1: use the star profile")]
    DoubleRootUseStar,

    #[error("series tail exceeds tolerance at K = {k_max} (tail bound {tail})")]
    TailTooLarge { k_max: usize, tail: f64 },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("cutoff requires R >= 2*rho + 2 (R = {big_r}, rho = {rho})")]
    CutoffRange { big_r: f64, rho: f64 },

    #[error("config: {0}")]
    Config(String),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
