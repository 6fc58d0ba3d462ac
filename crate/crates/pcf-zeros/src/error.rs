use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoeffError {
    #[error("truncation order must be at least 1, got {0}")]
    ZeroOrder(usize),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LgError {
    #[error("zhat = {0} lies on a branch cut")]
    OnCut(Complex64),
    #[error("zhat = {0} is outside the expansion region: {1}")]
    Region(Complex64, &'static str),
    #[error("large parameter u = {0} is below the minimum {1}")]
    SmallParameter(f64, f64),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TaylorError {
    #[error("taylor order {0} is below the minimum of 4")]
    OrderTooLow(usize),
    #[error("step {h} from {z0} does not converge even after subdivision")]
    StepFailure { z0: Complex64, h: Complex64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("a = {0} is a Hermite parameter value (a = -k + 1/2)")]
    Hermite(f64),
    #[error("z = {0} is outside the supported evaluation region")]
    Region(Complex64),
    #[error(transparent)]
    Taylor(#[from] TaylorError),
    #[error(transparent)]
    Lg(#[from] LgError),
    #[error("evaluation produced a non-finite value at z = {0}")]
    NonFinite(Complex64),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AiryError {
    #[error("Newton refinement did not converge from {0}")]
    NoConvergence(Complex64),
    #[error("airy zero index must be at least 1")]
    ZeroIndex,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChainError {
    #[error("a = {0} is a Hermite parameter value (a = -k + 1/2)")]
    Hermite(f64),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("z = {0} is a turning point of the equation")]
    TurningPoint(Complex64),
    #[error("arctan singularity in the fixed-point map at z = {0}")]
    ArctanSingular(Complex64),
    #[error("inner iteration failed to converge at chain index {index} (z = {z})")]
    NoConvergence { index: usize, z: Complex64 },
    #[error("zero count cap {0} exceeded")]
    CapExceeded(usize),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Taylor(#[from] TaylorError),
}
