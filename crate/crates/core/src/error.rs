use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("beta out of range: {beta} not in [{min}, {max}]")]
    BetaOutOfRange { beta: f64, min: f64, max: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge: achieved {achieved:.3e}, requested {requested:.3e}")]
    Quadrature { achieved: f64, requested: f64 },

    #[error("tolerance {tol:.1e} needs {needed} nodes, budget is {budget} (best achievable estimate {achieved:.3e})")]
    NodeBudget { tol: f64, needed: usize, budget: usize, achieved: f64 },

    #[error("linear system is numerically singular (condition estimate {condition:.3e})")]
    Singular { condition: f64 },

    #[error("Picard iteration needs beta > beta_c = {beta_c:.10}, got {beta}")]
    NotContraction { beta: f64, beta_c: f64 },

    #[error("argument {phi} outside the base sector |arg z| < {limit}; use eval_surface")]
    OutOfSector { phi: f64, limit: f64 },

    #[error("moment order k = {k} exceeds resolution guard k_max = {k_max}")]
    MomentOrder { k: usize, k_max: usize },

    #[error("argument {phi} outside expansion sector ({lo}, {hi}); Stokes boundary at {boundary}")]
    SectorViolation { phi: f64, lo: f64, hi: f64, boundary: f64 },

    #[error("expansion has {available} coefficients, {requested} requested")]
    NotEnoughTerms { available: usize, requested: usize },

    #[error("beta = {beta} is near-rational: |sin(beta*{n}*pi)| = {sin:.3e}; use g_beta_rational")]
    NearRational { beta: f64, n: usize, sin: f64 },

    #[error("point lies on the real axis (arg = {phi}); use boundary_values")]
    OnBoundary { phi: f64 },

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("invalid config field `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
