//! Radial factors `S_m`, the kernel coefficients `c_m(α) = 1/I_m`, their
//! asymptotic expansion constants, and the Euclidean coefficients `γ_m(α)`.

pub mod sfactor;
pub mod table;

pub use sfactor::{
    origin_sequence, s_at_origin, s_derivative, s_derivative_sequence, s_factor, s_factor_integral, s_sequence, SFactor,
};
pub use table::{
    a0_closed_form, asymptotic_prefactor, coef_a, coef_b, coef_d, euclid_gamma, euclid_gamma_quadrature,
    euclid_gamma_sequence, i_m_exact, i_m_sequence, laurent_coefficients, radial_moment, CoefMode, CoefTable,
    DEFAULT_M_MAX, DEFAULT_ORDER, I_M_TOLERANCE,
};
