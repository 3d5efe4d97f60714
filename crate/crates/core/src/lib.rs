//! Reproducing kernels of H-harmonic Bergman and Hardy spaces on the real
//! hyperbolic unit ball.

pub mod coefficients;
pub mod error;
pub mod geometry;
pub mod json;
pub mod kernels;
pub mod quadrature;
pub mod specfun;
pub mod verify;

pub use coefficients::{CoefMode, CoefTable};
pub use error::{Error, Result};
pub use geometry::{BallPoint, Params};
pub use kernels::{KernelKind, KernelSeries, KernelValue};
