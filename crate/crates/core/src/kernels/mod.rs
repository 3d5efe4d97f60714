//! Zonal harmonics and the truncated Bergman, Hardy and Euclidean kernel series.

mod series;
mod zonal;

pub use series::{
    bergman_kernel, bergman_kernel_grad, euclid_kernel, hardy_kernel, GradientSlice, KernelKind, KernelSeries,
    KernelSlice, KernelValue, DEFAULT_TRUNCATION_CAP, TERM_PRECISION,
};
pub use zonal::{harmonic_dimensions, zonal, zonal_scale, ZonalEval};

#[cfg(test)]
mod tests;
