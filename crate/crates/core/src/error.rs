use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("power iteration did not reach tolerance {tol:e} within {iterations} iterations (residual {residual:e})")]
    NonConvergence {
        iterations: usize,
        residual: f64,
        tol: f64,
    },
    #[error("index {index} out of range for matrix of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("invalid extension spec: {0}")]
    InvalidSpec(String),
    #[error("map sent {point:?} outside its domain (excess {excess:e})")]
    DomainEscape { point: Vec<f64>, excess: f64 },
    #[error("grid spacing {spacing:e} too coarse for epsilon {epsilon:e}")]
    GridTooCoarse { spacing: f64, epsilon: f64 },
    #[error("derivative norm overflow at orbit step {step}")]
    OverflowGuard { step: usize },
    #[error("not a saddle: lambda={lambda}, mu={mu:?}")]
    InvalidEigenvalues { lambda: f64, mu: Option<f64> },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
