use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Gamma function pole at argument {0}")]
    Pole(f64),
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("series diverges: {0}")]
    Divergence(String),
    #[error("quadrature error estimate {estimate:e} exceeds tolerance {tol:e}")]
    Quadrature { estimate: f64, tol: f64 },
    #[error("iteration did not converge: {0}")]
    Convergence(String),
    #[error("finite-difference stencil of size {step} leaves the ball at |x| = {norm}")]
    Stencil { norm: f64, step: f64 },
    #[error("series truncation needs more than {cap} terms (|x||y| = {product})")]
    Truncation { cap: usize, product: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
    #[error("condition fails: {0}")]
    Condition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
