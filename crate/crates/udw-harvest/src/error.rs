//! Error type shared by configuration, quadrature and evolution code.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarvestError {
    #[error("dim=1 amplitude coupling requires a positive ir_cutoff")]
    MissingCutoff,
    #[error("ir_cutoff is only meaningful for dim=1 amplitude coupling")]
    ForbiddenCutoff,
    #[error("ir_cutoff must be positive, got {0}")]
    NonPositiveCutoff(f64),
    #[error("unsupported spatial dimension {0}, expected 1, 2 or 3")]
    UnsupportedDimension(u32),
    #[error("smearing width must be nonnegative, got {0}")]
    NegativeWidth(f64),
    #[error("coupling strength must be nonnegative, got {0}")]
    NegativeCoupling(f64),
    #[error("excitation probability breaks the perturbative form: 1 - 2L = {0} < 0")]
    NoisyNegativeDiagonal(f64),
    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),
    #[error("evaluation routes disagree beyond combined error bounds: {0}")]
    PathDisagreement(String),
    #[error("pointwise kernel is undefined on the light cone (|dt| = r)")]
    OnLightCone,
    #[error("delta derivatives are supported up to order 4, got {0}")]
    UnsupportedOrder(u32),
    #[error("{0}")]
    WrongRegime(String),
    #[error("faddeeva function overflowed for z = {0}")]
    FaddeevaOverflow(Complex64),
    #[error("mode box does not resolve the configured scales: {0}")]
    UnresolvedScales(String),
    #[error("time stepping did not converge within the halving budget")]
    StepNotConverged,
    #[error("config error: {0}")]
    InvalidConfig(String),
}

impl HarvestError {
    /// Stable machine-readable tag, used in the CLI's JSON error field.
    pub fn kind(&self) -> &'static str {
        use HarvestError::*;
        match self {
            MissingCutoff => "MissingCutoff",
            ForbiddenCutoff => "ForbiddenCutoff",
            NonPositiveCutoff(_) => "NonPositiveCutoff",
            UnsupportedDimension(_) => "UnsupportedDimension",
            NegativeWidth(_) => "NegativeWidth",
            NegativeCoupling(_) => "NegativeCoupling",
            NoisyNegativeDiagonal(_) => "NoisyNegativeDiagonal",
            NonConvergence(_) => "NonConvergence",
            PathDisagreement(_) => "PathDisagreement",
            OnLightCone => "OnLightCone",
            UnsupportedOrder(_) => "UnsupportedOrder",
            WrongRegime(_) => "WrongRegime",
            FaddeevaOverflow(_) => "FaddeevaOverflow",
            UnresolvedScales(_) => "UnresolvedScales",
            StepNotConverged => "StepNotConverged",
            InvalidConfig(_) => "InvalidConfig",
        }
    }

    /// CLI exit code: 2 for configuration problems, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        use HarvestError::*;
        match self {
            MissingCutoff | ForbiddenCutoff | NonPositiveCutoff(_) | UnsupportedDimension(_)
            | NegativeWidth(_) | NegativeCoupling(_) | UnsupportedOrder(_) | WrongRegime(_)
            | InvalidConfig(_) => 2,
            NoisyNegativeDiagonal(_) | NonConvergence(_) | PathDisagreement(_) | OnLightCone
            | FaddeevaOverflow(_) | UnresolvedScales(_) | StepNotConverged => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarvestError>;
