use super::{dot, euclidean_norm};
use crate::error::{Error, Result};

/// Central-difference step and optional Richardson extrapolation
/// `(4 D(h/2) - D(h)) / 3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdScheme {
    pub step: f64,
    pub richardson: bool,
}

impl Default for FdScheme {
    fn default() -> Self {
        Self { step: 1e-3, richardson: false }
    }
}

impl FdScheme {
    pub fn new(step: f64) -> Self {
        Self { step, richardson: false }
    }

    pub fn richardson(mut self) -> Self {
        self.richardson = true;
        self
    }
}

fn check_stencil(x: &[f64], h: f64) -> Result<()> {
    let norm = euclidean_norm(x);
    if !(h > 0.0) || norm + h >= 1.0 {
        return Err(Error::Stencil { norm, step: h });
    }
    Ok(())
}

/// Values `f(x)`, gradient and Laplacian by second-order central differences.
fn stencil<F>(f: &F, x: &[f64], h: f64) -> Result<(Vec<f64>, f64)>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let center = f(x)?;
    let mut grad = Vec::with_capacity(x.len());
    let mut lap = 0.0;
    let mut p = x.to_vec();
    for i in 0..x.len() {
        p[i] = x[i] + h;
        let up = f(&p)?;
        p[i] = x[i] - h;
        let down = f(&p)?;
        p[i] = x[i];
        grad.push((up - down) / (2.0 * h));
        lap += (up - 2.0 * center + down) / (h * h);
    }
    Ok((grad, lap))
}

fn combined<F>(f: &F, x: &[f64], scheme: FdScheme) -> Result<(Vec<f64>, f64)>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    check_stencil(x, scheme.step)?;
    let (g, l) = stencil(f, x, scheme.step)?;
    if !scheme.richardson {
        return Ok((g, l));
    }
    let (g2, l2) = stencil(f, x, scheme.step / 2.0)?;
    let grad = g.iter().zip(&g2).map(|(a, b)| (4.0 * b - a) / 3.0).collect();
    Ok((grad, (4.0 * l2 - l) / 3.0))
}

/// Euclidean gradient `∇f(x)` by central differences.
pub fn gradient_fd<F>(f: &F, x: &[f64], scheme: FdScheme) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    combined(f, x, scheme).map(|(grad, _)| grad)
}

/// `Δ_h f(x) = (1-|x|²)[(1-|x|²)Δf(x) + 2(n-2)⟨x, ∇f(x)⟩]`.
pub fn hyperbolic_laplacian_fd<F>(f: &F, x: &[f64], scheme: FdScheme) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let (grad, lap) = combined(f, x, scheme)?;
    let w = 1.0 - dot(x, x);
    let n = x.len() as f64;
    Ok(w * (w * lap + 2.0 * (n - 2.0) * dot(x, &grad)))
}

/// `(1-|x|²)|∇f(x)|`.
pub fn invariant_gradient_fd<F>(f: &F, x: &[f64], scheme: FdScheme) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let grad = gradient_fd(f, x, scheme)?;
    Ok((1.0 - dot(x, x)) * euclidean_norm(&grad))
}
