//! Weighted quadrature on `[0, 1]`, the unit sphere and the unit ball, and
//! growth-rate fitting.

pub mod ball;
pub mod fit;
pub mod rule;

pub use ball::{
    ball_integral, ball_integrate, sphere_integral, sphere_integral_focused, sphere_integrate, BallIntegrand,
    BallOptions, Integral, SphereIntegrand,
};
pub use fit::{growth_fit, linear_fit, GrowthFit, GrowthModel};
pub use rule::{gauss_jacobi_rule, gauss_legendre_rule, GradedRuleBuilder, QuadRule};
