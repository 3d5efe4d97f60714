//! Zonal harmonics `Z_m(x, y) = κ_m |x|^m |y|^m C_m^{(λ)}(⟨x̂, ŷ⟩)` with
//! `λ = n/2 - 1` and `κ_m = (n+2m-2)/(n-2)`.

use crate::error::{Error, Result};
use crate::geometry::{dot, euclidean_norm};
use crate::specfun::{gegenbauer, gegenbauer_at_one};

/// `Z_m(x, y)` with optional first partials in `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZonalEval {
    pub m: usize,
    pub value: f64,
    pub partials: Option<Vec<f64>>,
}

/// `κ_m = (n + 2m - 2) / (n - 2)`.
pub fn zonal_scale(m: usize, n: usize) -> f64 {
    (n as f64 + 2.0 * m as f64 - 2.0) / (n as f64 - 2.0)
}

/// `dim H_m = Z_m(ζ, ζ) = κ_m (n-2)_m / m!` for `m = 0..=m_max`.
pub fn harmonic_dimensions(m_max: usize, n: usize) -> Vec<f64> {
    let lam = n as f64 / 2.0 - 1.0;
    gegenbauer_at_one(m_max, lam).into_iter().enumerate().map(|(m, c)| zonal_scale(m, n) * c).collect()
}

fn unit(v: &[f64], norm: f64) -> Vec<f64> {
    if norm == 0.0 {
        let mut e = vec![0.0; v.len()];
        e[0] = 1.0;
        e
    } else {
        v.iter().map(|c| c / norm).collect()
    }
}

/// `Z_m(x, y)` for points of the closed ball; partials are `∂/∂x_i`.
pub fn zonal(m: usize, x: &[f64], y: &[f64], want_partials: bool) -> Result<ZonalEval> {
    let n = x.len();
    if n < 3 || y.len() != n {
        return Err(Error::InvalidParameter(format!(
            "zonal harmonics need equal dimensions >= 3, got {n} and {}",
            y.len()
        )));
    }
    let (rx, ry) = (euclidean_norm(x), euclidean_norm(y));
    if m == 0 {
        return Ok(ZonalEval { m, value: 1.0, partials: want_partials.then(|| vec![0.0; n]) });
    }
    let zeta = unit(x, rx);
    let eta = unit(y, ry);
    let t = dot(&zeta, &eta).clamp(-1.0, 1.0);
    let lam = n as f64 / 2.0 - 1.0;
    let g = gegenbauer(m, lam, t)?;
    let kappa = zonal_scale(m, n);
    let mi = m as i32;
    let value = if rx == 0.0 || ry == 0.0 { 0.0 } else { kappa * rx.powi(mi) * ry.powi(mi) * g.value };
    let partials = want_partials.then(|| {
        // κ_m |x|^{m-1}|y|^m [m ζ_i C_m(t) + (n-2)(η_i - ζ_i t) C_{m-1}^{λ+1}(t)]
        let front = kappa * rx.powi(mi - 1) * ry.powi(mi);
        zeta.iter().zip(&eta).map(|(&z, &e)| front * (m as f64 * z * g.value + g.derivative * (e - z * t))).collect()
    });
    Ok(ZonalEval { m, value, partials })
}
