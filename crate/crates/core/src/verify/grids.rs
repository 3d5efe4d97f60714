//! Sample points and summary statistics shared by the checks.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::quadrature::{growth_fit, GrowthFit, GrowthModel};

/// Boundary shells `1 - |x|² ∈ {10^-1, 10^-1.5, …, 10^-3}`.
pub fn default_shells() -> Vec<f64> {
    (0..5).map(|k| 10f64.powf(-1.0 - 0.5 * k as f64)).collect()
}

/// Radius with `1 - r² = gap`.
pub fn shell_radius(gap: f64) -> f64 {
    (1.0 - gap).sqrt()
}

/// `r (cos θ, sin θ, 0, …, 0)`.
pub fn planar(n: usize, r: f64, theta: f64) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[0] = r * theta.cos();
    v[1] = r * theta.sin();
    v
}

pub fn on_axis(n: usize, r: f64) -> Vec<f64> {
    planar(n, r, 0.0)
}

/// `max / min` of positive values; infinite if any value is not positive.
pub fn spread(values: &[f64]) -> f64 {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if min > 0.0 && max.is_finite() {
        max / min
    } else {
        f64::INFINITY
    }
}

pub fn max_of(values: &[f64]) -> f64 {
    values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

pub fn min_of(values: &[f64]) -> f64 {
    values.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Power-law fit of `values` against the shell gaps.
pub fn fit_against(gaps: &[f64], values: &[f64], model: GrowthModel) -> Result<GrowthFit> {
    let samples: Vec<(f64, f64)> = gaps.iter().copied().zip(values.iter().copied()).collect();
    growth_fit(&samples, model)
}

/// Points drawn uniformly from the ball of radius `radius`.
pub fn random_points(n: usize, count: usize, radius: f64, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm2: f64 = v.iter().map(|c| c * c).sum();
        if norm2 < 1.0 {
            out.push(v.iter().map(|c| c * radius).collect());
        }
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rejects shell lists that cannot support a slope fit.
pub fn check_shells(gaps: &[f64]) -> Result<()> {
    if gaps.len() < 4 || gaps.iter().any(|&g| !(g > 0.0 && g < 1.0)) {
        return Err(Error::InvalidParameter(format!("need at least 4 shell gaps in (0, 1), got {gaps:?}")));
    }
    Ok(())
}
