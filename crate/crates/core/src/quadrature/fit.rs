//! Least-squares growth-rate fits against `log(1/a)`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Growth model for [`growth_fit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthModel {
    /// `log v ≈ c + e·log(1/a)`.
    Power,
    /// `v ≈ c + e·log(1/a)`.
    Log,
}

/// Result of a growth fit; `fitted_exponent` is the slope `e` of the model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthFit {
    pub model: GrowthModel,
    pub abscissae: Vec<f64>,
    pub ordinates: Vec<f64>,
    pub fitted_exponent: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Ordinary least squares `y ≈ c + e x`; returns `(e, c, r²)`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0) };
    (slope, intercept, r2)
}

/// Fits `samples = [(a_i, v_i)]` with abscissae `a_i > 0` tending to 0.
pub fn growth_fit(samples: &[(f64, f64)], model: GrowthModel) -> Result<GrowthFit> {
    if samples.len() < 4 {
        return Err(Error::DegenerateFit(format!("need at least 4 samples, got {}", samples.len())));
    }
    if samples.iter().any(|&(a, _)| !(a > 0.0)) {
        return Err(Error::DegenerateFit("abscissae must be positive".into()));
    }
    let (lo, hi) = samples.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &(a, _)| (lo.min(a), hi.max(a)));
    if hi / lo < 10.0 {
        return Err(Error::DegenerateFit(format!("abscissae span {lo:e}..{hi:e}, less than one decade")));
    }
    let xs: Vec<f64> = samples.iter().map(|&(a, _)| (1.0 / a).ln()).collect();
    let ys: Vec<f64> = match model {
        GrowthModel::Power => {
            if samples.iter().any(|&(_, v)| !(v > 0.0)) {
                return Err(Error::DegenerateFit("power model needs positive values".into()));
            }
            samples.iter().map(|&(_, v)| v.ln()).collect()
        }
        GrowthModel::Log => samples.iter().map(|&(_, v)| v).collect(),
    };
    let (slope, intercept, r_squared) = linear_fit(&xs, &ys);
    Ok(GrowthFit {
        model,
        abscissae: samples.iter().map(|s| s.0).collect(),
        ordinates: samples.iter().map(|s| s.1).collect(),
        fitted_exponent: slope,
        intercept,
        r_squared,
    })
}
