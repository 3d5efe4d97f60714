//! Special functions: Gamma ratios, Gauss and generalized hypergeometric
//! functions, and Gegenbauer polynomials.

pub mod gamma;
pub mod gegenbauer;
pub mod hyp2f1;
pub mod hyp3f2;

pub use gamma::{
    beta, digamma, gamma, gamma_ratio, ln_beta, ln_gamma, ln_gamma_ratio, pochhammer, rgamma, GammaRatioSpec, SignedLog,
};
pub use gegenbauer::{gegenbauer, gegenbauer_at_one, gegenbauer_sequence, GegenbauerSum, GegenbauerValue};
pub use hyp2f1::{gauss_value, hyp2f1, HypParams21};
pub use hyp3f2::{hyp3f2, hyp3f2_unit, unit_series, HypParams32};
