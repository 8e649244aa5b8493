use thiserror::Error;

/// Errors raised by the numerical modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state is not normalized: |a|^2 + |b|^2 = {norm_sq}")]
    Normalization { norm_sq: f64 },

    #[error("site {site} is out of range for {n_agents} agents (sites are 1-based)")]
    SiteOutOfRange { site: usize, n_agents: usize },

    #[error("{n_agents} agents exceeds the configured cap of {cap}")]
    DimensionCapExceeded { n_agents: usize, cap: usize },

    #[error("at least one agent is required")]
    NoAgents,

    #[error("product state needs at least one factor")]
    EmptyFactorList,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("operator is not Hermitian (max |M - M^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("inverse temperature must be non-negative, got {0}")]
    NegativeBeta(f64),

    #[error("inverse temperature must be positive, got {0}")]
    NonPositiveBeta(f64),

    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),

    #[error("no phase transition for non-negative coupling J = {0}")]
    NonNegativeCoupling(f64),

    #[error("exponent |beta| * spectral radius = {exponent} exceeds the overflow guard of 700")]
    OverflowRisk { exponent: f64 },

    #[error("Bloch vector norm {0} is not admissible here")]
    NonUnitBloch(f64),

    #[error("axis must be 1, 2 or 3, got {0}")]
    InvalidAxis(usize),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("mean-field reduction requires p = 2J (got J = {j}, p = {p})")]
    MeanFieldRelation { j: f64, p: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
