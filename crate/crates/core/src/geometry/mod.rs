//! Points of the unit ball, the Ahlfors bracket, Möbius involutions, and
//! finite-difference versions of the hyperbolic Laplacian and invariant gradient.

mod fd;

pub use fd::{gradient_fd, hyperbolic_laplacian_fd, invariant_gradient_fd, FdScheme};

use serde::Serialize;

use crate::error::{Error, Result};

/// Dimension `n ≥ 3` and weight `α > -1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Params {
    pub n: usize,
    pub alpha: f64,
}

impl Params {
    pub fn new(n: usize, alpha: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("dimension must be at least 3, got {n}")));
        }
        if !(alpha > -1.0) || !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!("weight must satisfy alpha > -1, got {alpha}")));
        }
        Ok(Self { n, alpha })
    }

    pub fn half_n(&self) -> f64 {
        self.n as f64 / 2.0
    }

    /// Same dimension, different weight.
    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(self.n, alpha)
    }
}

/// A point of the open unit ball with its Euclidean norm.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallPoint {
    coords: Vec<f64>,
    norm: f64,
}

impl BallPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("point has non-finite coordinates".into()));
        }
        let norm = euclidean_norm(&coords);
        if norm >= 1.0 {
            return Err(Error::Domain(format!("point of norm {norm} is not inside the unit ball")));
        }
        Ok(Self { coords, norm })
    }

    pub fn origin(n: usize) -> Self {
        Self { coords: vec![0.0; n], norm: 0.0 }
    }

    /// `r e₁`.
    pub fn on_axis(n: usize, r: f64) -> Result<Self> {
        let mut coords = vec![0.0; n];
        coords[0] = r;
        Self::new(coords)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// `x / |x|`, or `e₁` at the origin.
    pub fn direction(&self) -> Vec<f64> {
        if self.norm == 0.0 {
            let mut e = vec![0.0; self.dim()];
            e[0] = 1.0;
            e
        } else {
            self.coords.iter().map(|c| c / self.norm).collect()
        }
    }
}

impl AsRef<[f64]> for BallPoint {
    fn as_ref(&self) -> &[f64] {
        &self.coords
    }
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn euclidean_norm(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

/// `[x, y] = √(1 - 2⟨x,y⟩ + |x|²|y|²)` for points of the closed ball.
pub fn ahlfors_bracket(x: &[f64], y: &[f64]) -> f64 {
    let xx = dot(x, x);
    let yy = dot(y, y);
    // (1 - ⟨x,y⟩)² + (|x|²|y|² - ⟨x,y⟩²) avoids cancellation near x = y on the sphere
    let xy = dot(x, y);
    let gram = (xx * yy - xy * xy).max(0.0);
    ((1.0 - xy).powi(2) + gram).sqrt()
}

/// Möbius involution `φ_a(x) = (a|x-a|² + (1-|a|²)(a-x)) / [x,a]²`.
pub fn mobius_map(a: &BallPoint, x: &BallPoint) -> Result<BallPoint> {
    if a.dim() != x.dim() {
        return Err(Error::InvalidParameter("points of different dimensions".into()));
    }
    let av = a.coords();
    let xv = x.coords();
    let diff2: f64 = av.iter().zip(xv).map(|(p, q)| (q - p) * (q - p)).sum();
    let aa = a.norm() * a.norm();
    let br2 = ahlfors_bracket(xv, av).powi(2);
    let coords: Vec<f64> = av.iter().zip(xv).map(|(&p, &q)| (p * diff2 + (1.0 - aa) * (p - q)) / br2).collect();
    let norm = euclidean_norm(&coords);
    Ok(BallPoint { coords, norm: norm.min(1.0 - f64::EPSILON) })
}
