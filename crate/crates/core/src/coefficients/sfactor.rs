//! The radial factor `S_m(r) = S_m(0) F(m, 1-n/2; m+n/2; r²)`, normalized by `S_m(1) = 1`.

use crate::error::{Error, Result};
use crate::geometry::Params;
use crate::quadrature::GradedRuleBuilder;
use crate::specfun::{gamma_ratio, hyp2f1, GammaRatioSpec, HypParams21};

/// `S_m` for a fixed degree and dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SFactor {
    pub m: usize,
    pub params: Params,
}

impl SFactor {
    pub fn new(m: usize, params: Params) -> Self {
        Self { m, params }
    }

    pub fn value(&self, r: f64) -> Result<f64> {
        s_factor(self.m, r, &self.params)
    }

    pub fn derivative(&self, r: f64) -> Result<f64> {
        s_derivative(self.m, r, &self.params)
    }

    /// `S_m(0) = B(m, n/2) / B(m, n-1)`.
    pub fn at_origin(&self) -> f64 {
        s_at_origin(self.m, self.params.n)
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!("radius must lie in [0, 1], got {r}")));
    }
    Ok(())
}

/// `S_m(0) = Γ(n/2)Γ(m+n-1) / (Γ(n-1)Γ(m+n/2))`.
pub fn s_at_origin(m: usize, n: usize) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let nf = n as f64;
    let spec = GammaRatioSpec::new(&[nf - 1.0], &[nf / 2.0]);
    let ratio = gamma_ratio(&spec, m as f64).expect("positive Gamma arguments");
    let front = gamma_ratio(&GammaRatioSpec::new(&[nf / 2.0], &[nf - 1.0]), 0.0).expect("positive Gamma arguments");
    front * ratio
}

/// `S_m(r)` from the hypergeometric series at `z = r²`.
pub fn s_factor(m: usize, r: f64, params: &Params) -> Result<f64> {
    check_radius(r)?;
    if m == 0 || r == 1.0 {
        return Ok(1.0);
    }
    let h = params.half_n();
    let mf = m as f64;
    let f = hyp2f1(&HypParams21::new(mf, 1.0 - h, mf + h)?, r * r)?;
    Ok(s_at_origin(m, params.n) * f)
}

/// `dS_m/dr = S_m(0) · 2r · m(1-n/2)/(m+n/2) · F(m+1, 2-n/2; m+1+n/2; r²)`.
pub fn s_derivative(m: usize, r: f64, params: &Params) -> Result<f64> {
    check_radius(r)?;
    if m == 0 || r == 0.0 {
        return Ok(0.0);
    }
    let h = params.half_n();
    let mf = m as f64;
    let f = hyp2f1(&HypParams21::new(mf + 1.0, 2.0 - h, mf + 1.0 + h)?, r * r)?;
    Ok(s_at_origin(m, params.n) * 2.0 * r * mf * (1.0 - h) / (mf + h) * f)
}

/// `S_m(r)` from the integral representation
/// `(1/B(m, n-1)) ∫₀¹ t^{m-1}(1-t)^{n/2-1}(1-r²t)^{n/2-1} dt`.
pub fn s_factor_integral(m: usize, r: f64, params: &Params) -> Result<f64> {
    check_radius(r)?;
    if m == 0 {
        return Ok(1.0);
    }
    let h = params.half_n();
    let builder = GradedRuleBuilder::new(24, m as f64 - 1.0, h - 1.0)?;
    let rule = builder.build(1e-14, 1);
    let z = r * r;
    let integral = rule.integrate(|t| (1.0 - z * t).powf(h - 1.0));
    let norm = crate::specfun::beta(m as f64, params.n as f64 - 1.0)?;
    Ok(integral / norm)
}

/// Start offset of the backward recurrence for `F(a, b; a + j; w)`.
fn miller_offset(z: f64) -> f64 {
    40.0 / (-z.ln()) + 50.0
}

/// `F(a, b; a + j; w)` for `j = 0..=count`, `w ≤ 0`, by backward recurrence in
/// the third parameter, normalized with `F(a, b; a; w) = (1-w)^{-b}`.
///
/// The recurrence is
/// `c(c-1)(w-1)F(c-1) + c[c-1-(2c-a-b-1)w]F(c) + (c-a)(c-b)wF(c+1) = 0`,
/// whose wanted solution is minimal as `c → ∞`.
fn miller(a: f64, b: f64, w: f64, count: usize, offset: usize) -> Vec<f64> {
    let top = count + offset;
    let mut out = vec![0.0; count + 1];
    let mut next = 0.0;
    let mut cur = 1.0;
    if top <= count {
        out[top] = cur;
    }
    for j in (1..=top).rev() {
        let c = a + j as f64;
        let prev = -(c * (c - 1.0 - (2.0 * c - a - b - 1.0) * w) * cur + (c - a) * (c - b) * w * next)
            / (c * (c - 1.0) * (w - 1.0));
        next = cur;
        cur = prev;
        if j - 1 <= count {
            out[j - 1] = cur;
        }
        if cur.abs() > 1e200 {
            cur *= 1e-200;
            next *= 1e-200;
            for v in out.iter_mut().skip(j - 1) {
                *v *= 1e-200;
            }
        }
    }
    let scale = (1.0 - w).powf(-b) / out[0];
    out.iter_mut().for_each(|v| *v *= scale);
    out
}

fn use_recurrence(z: f64, count: usize) -> Option<usize> {
    if z <= 0.0 || z >= 1.0 {
        return None;
    }
    let offset = miller_offset(z);
    (offset <= 50.0 * (count as f64 + 1.0)).then_some(offset as usize)
}

/// `S_m(r)` for `m = 0..=m_max`.
///
/// Uses the backward recurrence in `m` for the Pfaff-transformed series when its
/// start offset is affordable, and per-degree evaluation otherwise.
pub fn s_sequence(r: f64, m_max: usize, params: &Params) -> Result<Vec<f64>> {
    check_radius(r)?;
    let n = params.n;
    let h = params.half_n();
    let z = r * r;
    let origin = origin_sequence(m_max, n);
    if r == 0.0 {
        return Ok(origin);
    }
    if r == 1.0 {
        return Ok(vec![1.0; m_max + 1]);
    }
    match use_recurrence(z, m_max) {
        Some(offset) => {
            let w = z / (z - 1.0);
            let g = miller(h, 1.0 - h, w, m_max, offset);
            let front = (1.0 - z).powf(h - 1.0);
            Ok(origin
                .iter()
                .zip(&g)
                .enumerate()
                .map(|(m, (s0, f))| if m == 0 { 1.0 } else { s0 * front * f })
                .collect())
        }
        None => (0..=m_max).map(|m| s_factor(m, r, params)).collect(),
    }
}

/// `dS_m/dr` for `m = 0..=m_max`.
pub fn s_derivative_sequence(r: f64, m_max: usize, params: &Params) -> Result<Vec<f64>> {
    check_radius(r)?;
    let h = params.half_n();
    let z = r * r;
    if r == 0.0 {
        return Ok(vec![0.0; m_max + 1]);
    }
    match use_recurrence(z, m_max + 1) {
        Some(offset) => {
            let origin = origin_sequence(m_max, params.n);
            let w = z / (z - 1.0);
            // F(m+1, 2-n/2; m+1+n/2; z) = (1-z)^{n/2-2} F(n/2, 2-n/2; n/2+m+1; w)
            let g = miller(h, 2.0 - h, w, m_max + 1, offset);
            let front = (1.0 - z).powf(h - 2.0);
            Ok((0..=m_max)
                .map(|m| {
                    if m == 0 {
                        return 0.0;
                    }
                    let mf = m as f64;
                    origin[m] * 2.0 * r * mf * (1.0 - h) / (mf + h) * front * g[m + 1]
                })
                .collect())
        }
        None => (0..=m_max).map(|m| s_derivative(m, r, params)).collect(),
    }
}

/// `S_m(0)` for `m = 0..=m_max` by the ratio `S_{m+1}(0)/S_m(0) = (m+n-1)/(m+n/2)`.
pub fn origin_sequence(m_max: usize, n: usize) -> Vec<f64> {
    let nf = n as f64;
    let mut out = Vec::with_capacity(m_max + 1);
    let mut v = 1.0;
    out.push(v);
    for m in 0..m_max {
        let k = m as f64;
        v *= (k + nf - 1.0) / (k + nf / 2.0);
        out.push(v);
    }
    out
}
