//! Integration over the unit sphere and the unit ball with normalized measures.
//!
//! The ball measure is `dν_β = (1-|y|²)^β dV / V_β`, normalized to total mass 1.
//! In polar form, with `s = |y|²`,
//!
//! `∫_B f dν_β = (1/B(n/2, β+1)) ∫₀¹ s^{n/2-1}(1-s)^β ∫_S f(√s ζ) dσ(ζ) ds`.
//!
//! Zonal integrands depend on `y` only through `|y|` and `t = ⟨y/|y|, e₁⟩`;
//! their sphere means reduce to `∫ g(t) (1-t²)^{(n-3)/2} dt` up to normalization.

use std::f64::consts::PI;

use super::rule::{GradedRuleBuilder, QuadRule};
use crate::error::{Error, Result};
use crate::specfun::beta;

const LOW_ORDER: usize = 8;
const HIGH_ORDER: usize = 12;
const MAX_SPLIT: usize = 8;

/// Field on the sphere, either general (n = 3) or zonal about `e₁`.
pub enum SphereIntegrand<'a> {
    Field(&'a dyn Fn(&[f64]) -> Result<f64>),
    Zonal(&'a dyn Fn(f64) -> Result<f64>),
}

/// Field on the ball.
pub enum BallIntegrand<'a> {
    /// `f(y)` for a point `y` of the ball; only supported for `n = 3`.
    Field(&'a dyn Fn(&[f64]) -> Result<f64>),
    /// `g(ρ, t_i)` for one radius and a batch of cosines `t_i = ⟨ζ, e₁⟩`.
    Zonal(&'a dyn Fn(f64, &[f64]) -> Result<Vec<f64>>),
}

/// Value of an integral with its error estimate and the integral of `|f|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub abs_mass: f64,
}

fn sphere_exponent(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("dimension must be at least 3, got {n}")));
    }
    Ok((n as f64 - 3.0) / 2.0)
}

/// Rules for the sphere variable `u = (1+t)/2` with the normalized weight
/// `u^λ(1-u)^λ / B(λ+1, λ+1)`, graded toward the pole `t = 1`.
struct SphereRules {
    low: GradedRuleBuilder,
    high: GradedRuleBuilder,
    norm: f64,
}

impl SphereRules {
    fn new(n: usize) -> Result<Self> {
        let lam = sphere_exponent(n)?;
        Ok(Self {
            low: GradedRuleBuilder::new(LOW_ORDER, lam, lam)?,
            high: GradedRuleBuilder::new(HIGH_ORDER, lam, lam)?,
            norm: 1.0 / beta(lam + 1.0, lam + 1.0)?,
        })
    }

    /// Cosine nodes `t = 2u - 1` and normalized weights.
    fn build(&self, high: bool, floor: f64, split: usize) -> (Vec<f64>, Vec<f64>) {
        let rule = if high { self.high.build(floor, split) } else { self.low.build(floor, split) };
        let ts = rule.nodes.iter().map(|&u| 2.0 * u - 1.0).collect();
        let ws = rule.weights.iter().map(|&w| w * self.norm).collect();
        (ts, ws)
    }
}

fn accept(value: f64, other: f64, abs_mass: f64, tol: f64) -> bool {
    let error = (value - other).abs();
    error <= tol * abs_mass || (abs_mass == 0.0 && error == 0.0)
}

/// `∫_S g dσ` with `σ(S) = 1`.
pub fn sphere_integrate(g: SphereIntegrand<'_>, n: usize, tol: f64) -> Result<f64> {
    sphere_integral(g, n, tol).map(|i| i.value)
}

/// [`sphere_integrate`] returning the error estimate as well.
pub fn sphere_integral(g: SphereIntegrand<'_>, n: usize, tol: f64) -> Result<Integral> {
    sphere_integral_focused(g, n, tol, 0.0)
}

/// [`sphere_integral`] with panels graded toward the pole `t = 1` for an
/// integrand peaked like a kernel with `|x||y| = focus`.
pub fn sphere_integral_focused(g: SphereIntegrand<'_>, n: usize, tol: f64, focus: f64) -> Result<Integral> {
    let floor = angular_floor(focus);
    let rules = SphereRules::new(n)?;
    if matches!(g, SphereIntegrand::Field(_)) && n != 3 {
        return Err(Error::Unsupported(format!("non-zonal sphere integrands need n = 3, got n = {n}")));
    }
    let eval = |high: bool, split: usize| -> Result<(f64, f64)> {
        let (ts, ws) = rules.build(high, floor, split);
        let mut acc = 0.0;
        let mut abs = 0.0;
        match &g {
            SphereIntegrand::Zonal(h) => {
                for (&t, &w) in ts.iter().zip(&ws) {
                    let v = h(t)?;
                    acc += w * v;
                    abs += w * v.abs();
                }
            }
            SphereIntegrand::Field(f) => {
                let nphi = azimuth_count(high, split);
                let mut point = [0.0; 3];
                for (&t, &w) in ts.iter().zip(&ws) {
                    let sin = (1.0 - t * t).max(0.0).sqrt();
                    for k in 0..nphi {
                        let phi = 2.0 * PI * k as f64 / nphi as f64;
                        point[0] = t;
                        point[1] = sin * phi.cos();
                        point[2] = sin * phi.sin();
                        let v = f(&point)?;
                        acc += w * v / nphi as f64;
                        abs += w * v.abs() / nphi as f64;
                    }
                }
            }
        }
        Ok((acc, abs))
    };
    refine(eval, tol)
}

fn azimuth_count(high: bool, split: usize) -> usize {
    if high {
        32 * split
    } else {
        16 * split
    }
}

fn refine(eval: impl Fn(bool, usize) -> Result<(f64, f64)>, tol: f64) -> Result<Integral> {
    let mut split = 1;
    loop {
        let (lo, _) = eval(false, split)?;
        let (hi, abs_mass) = eval(true, split)?;
        if accept(hi, lo, abs_mass, tol) {
            return Ok(Integral { value: hi, error: (hi - lo).abs(), abs_mass });
        }
        if split >= MAX_SPLIT {
            return Err(Error::Quadrature { estimate: (hi - lo).abs() / abs_mass.max(f64::MIN_POSITIVE), tol });
        }
        split *= 2;
    }
}

/// Options for ball integration.
///
/// `focus` is the radius of a point on the positive `e₁` axis near which the
/// integrand may concentrate; panels are graded toward `|y| = 1` and toward the
/// pole `t = 1` on a scale set by `1 - focus`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallOptions {
    pub beta: f64,
    pub tol: f64,
    pub focus: f64,
}

impl BallOptions {
    pub fn new(beta: f64, tol: f64) -> Self {
        Self { beta, tol, focus: 0.0 }
    }

    pub fn focus(mut self, r: f64) -> Self {
        self.focus = r;
        self
    }
}

/// `∫_B f dν_β` with `ν_β(B) = 1`, to relative tolerance `tol` measured
/// against `∫_B |f| dν_β`.
pub fn ball_integrate(f: BallIntegrand<'_>, n: usize, beta: f64, tol: f64) -> Result<f64> {
    ball_integral(f, n, &BallOptions::new(beta, tol)).map(|i| i.value)
}

/// [`ball_integrate`] with a focus point and the error estimate.
pub fn ball_integral(f: BallIntegrand<'_>, n: usize, opts: &BallOptions) -> Result<Integral> {
    if !(opts.beta > -1.0) {
        return Err(Error::InvalidParameter(format!("weight exponent must exceed -1, got {}", opts.beta)));
    }
    if !(0.0..1.0).contains(&opts.focus) {
        return Err(Error::InvalidParameter(format!("focus radius must lie in [0, 1), got {}", opts.focus)));
    }
    if matches!(f, BallIntegrand::Field(_)) && n != 3 {
        return Err(Error::Unsupported(format!("non-zonal ball integrands need n = 3, got n = {n}")));
    }
    let sphere = SphereRules::new(n)?;
    let nh = n as f64 / 2.0;
    let radial_low = GradedRuleBuilder::new(LOW_ORDER, nh - 1.0, opts.beta)?;
    let radial_high = GradedRuleBuilder::new(HIGH_ORDER, nh - 1.0, opts.beta)?;
    let norm = 1.0 / beta(nh, opts.beta + 1.0)?;
    let focus = opts.focus;
    let radial_floor = (0.02 * (1.0 - focus * focus)).min(0.05);

    let eval = |high: bool, split: usize| -> Result<(f64, f64)> {
        let radial: QuadRule =
            if high { radial_high.build(radial_floor, split) } else { radial_low.build(radial_floor, split) };
        let mut acc = 0.0;
        let mut abs = 0.0;
        for (&s, &w) in radial.nodes.iter().zip(&radial.weights) {
            let rho = s.sqrt();
            let (ts, ws) = sphere.build(high, angular_floor(focus * rho), split);
            let (mean, abs_mean) = match &f {
                BallIntegrand::Zonal(g) => {
                    let vals = g(rho, &ts)?;
                    debug_assert_eq!(vals.len(), ts.len());
                    vals.iter().zip(&ws).fold((0.0, 0.0), |(a, b), (&v, &w)| (a + w * v, b + w * v.abs()))
                }
                BallIntegrand::Field(g) => {
                    let nphi = azimuth_count(high, split);
                    let mut point = [0.0; 3];
                    let (mut a, mut b) = (0.0, 0.0);
                    for (&t, &wt) in ts.iter().zip(&ws) {
                        let sin = (1.0 - t * t).max(0.0).sqrt();
                        for k in 0..nphi {
                            let phi = 2.0 * PI * k as f64 / nphi as f64;
                            point[0] = rho * t;
                            point[1] = rho * sin * phi.cos();
                            point[2] = rho * sin * phi.sin();
                            let v = g(&point)?;
                            a += wt * v / nphi as f64;
                            b += wt * v.abs() / nphi as f64;
                        }
                    }
                    (a, b)
                }
            };
            acc += w * mean;
            abs += w * abs_mean;
        }
        Ok((acc * norm, abs * norm))
    };
    refine(eval, opts.tol)
}

/// Grading floor in `u = (1+t)/2` for a kernel peak at `[x, y]² = (1-q)² + 4q(1-u)`.
fn angular_floor(q: f64) -> f64 {
    if q <= 0.0 {
        return 0.05;
    }
    (0.05 * (1.0 - q).powi(2) / (4.0 * q)).min(0.05)
}
