use serde::Serialize;

use super::sfactor::s_sequence;
use crate::error::{Error, Result};
use crate::geometry::Params;
use crate::quadrature::{GradedRuleBuilder, QuadRule};
use crate::specfun::{beta, gamma_ratio, hyp3f2_unit, pochhammer, GammaRatioSpec, HypParams32};

/// Relative tolerance on the radial integrals `I_m`.
pub const I_M_TOLERANCE: f64 = 1e-10;
/// Default highest degree with an exactly computed coefficient.
pub const DEFAULT_M_MAX: usize = 400;
/// Default expansion order.
pub const DEFAULT_ORDER: usize = 4;

const LOW_ORDER: usize = 24;
const HIGH_ORDER: usize = 32;
/// Smallest panel next to `t = 1` in the radial integral, `2^{-50}`.
const RADIAL_FLOOR: f64 = 8.881784197001252e-16;

/// How to obtain `c_m(α)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoefMode {
    Exact,
    /// `Γ(m+α+n)/Γ(m+n-1) Σ_{k<K} D_k/m^k`.
    Asymptotic(usize),
}

fn radial_rules(params: &Params) -> Result<(QuadRule, QuadRule)> {
    let h = params.half_n();
    let low = GradedRuleBuilder::new(LOW_ORDER, h - 1.0, params.alpha)?.build(RADIAL_FLOOR, 1);
    let high = GradedRuleBuilder::new(HIGH_ORDER, h - 1.0, params.alpha)?.build(RADIAL_FLOOR, 1);
    Ok((low, high))
}

fn accumulate(rule: &QuadRule, m_max: usize, params: &Params) -> Result<Vec<f64>> {
    let mut acc = vec![0.0; m_max + 1];
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let s = s_sequence(t.sqrt(), m_max, params)?;
        let mut tm = w;
        for (a, sm) in acc.iter_mut().zip(&s) {
            *a += tm * sm * sm;
            tm *= t;
        }
    }
    let norm = beta(params.half_n(), params.alpha + 1.0)?;
    acc.iter_mut().for_each(|a| *a /= norm);
    Ok(acc)
}

/// `I_m = (1/B(n/2, α+1)) ∫₀¹ t^{m+n/2-1}(1-t)^α S_m(√t)² dt` for `m = 0..=m_max`.
///
/// All degrees share one composite Gauss–Jacobi rule graded toward `t = 1`;
/// the error estimate compares two rule orders.
pub fn i_m_sequence(m_max: usize, params: &Params) -> Result<Vec<f64>> {
    let (low, high) = radial_rules(params)?;
    let a = accumulate(&low, m_max, params)?;
    let b = accumulate(&high, m_max, params)?;
    for (x, y) in a.iter().zip(&b) {
        let estimate = ((x - y) / y).abs();
        if !(estimate <= I_M_TOLERANCE) {
            return Err(Error::Quadrature { estimate, tol: I_M_TOLERANCE });
        }
    }
    let mut b = b;
    // S_0 ≡ 1, so I_0 is the normalized mass
    b[0] = 1.0;
    Ok(b)
}

/// `I_m` for one degree; `c_m(α) = 1 / I_m`.
pub fn i_m_exact(m: usize, params: &Params) -> Result<f64> {
    if m == 0 {
        return Ok(1.0);
    }
    let (low, high) = radial_rules(params)?;
    let single = |rule: &QuadRule| -> Result<f64> {
        let mut acc = 0.0;
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            let s = super::sfactor::s_factor(m, t.sqrt(), params)?;
            acc += w * t.powi(m as i32) * s * s;
        }
        Ok(acc / beta(params.half_n(), params.alpha + 1.0)?)
    };
    let a = single(&low)?;
    let b = single(&high)?;
    let estimate = ((a - b) / b).abs();
    if !(estimate <= I_M_TOLERANCE) {
        return Err(Error::Quadrature { estimate, tol: I_M_TOLERANCE });
    }
    Ok(b)
}

/// `Γ(m+α+n) / Γ(m+n-1)`.
pub fn asymptotic_prefactor(m: f64, params: &Params) -> Result<f64> {
    let n = params.n as f64;
    gamma_ratio(&GammaRatioSpec::new(&[params.alpha + n], &[n - 1.0]), m)
}

/// `A_k` of the expansion `I_m = Γ(m+n-1)/Γ(m+α+n) Σ_k A_k/(m+α+n)_k`.
pub fn coef_a(k: usize, params: &Params) -> Result<f64> {
    let (h, al) = (params.half_n(), params.alpha);
    let n = params.n as f64;
    let kf = k as f64;
    let poch = pochhammer(1.0 - h, kf)?;
    if poch == 0.0 {
        return Ok(0.0);
    }
    let front =
        gamma_ratio(&GammaRatioSpec::new(&[h, al + n, al + 2.0 * n - 1.0], &[n - 1.0, n - 1.0, al + 3.0 * h]), 0.0)?;
    let ratio = pochhammer(al + 1.0, kf)? * pochhammer(al + n, kf)? * poch
        / (pochhammer(al + h + 1.0, kf)? * pochhammer(1.0, kf)?);
    let f32 = hyp3f2_unit(&HypParams32::new(h, al + n, 1.0 - h, al + h + 1.0 + kf, al + 3.0 * h)?)?;
    Ok(front * ratio * f32)
}

/// Closed form of `A_0`:
/// `Γ(n/2)Γ(α+n/2+1)Γ(α+2n-1)Γ((α+n)/2)Γ((α+n)/2+1) / (Γ(n-1)²Γ(α+n+1)Γ(α/2+1)Γ(α/2+n))`.
pub fn a0_closed_form(params: &Params) -> Result<f64> {
    let (h, al) = (params.half_n(), params.alpha);
    let n = params.n as f64;
    let spec = GammaRatioSpec::new(
        &[h, al + h + 1.0, al + 2.0 * n - 1.0, (al + n) / 2.0, (al + n) / 2.0 + 1.0],
        &[n - 1.0, n - 1.0, al + n + 1.0, al / 2.0 + 1.0, al / 2.0 + n],
    );
    gamma_ratio(&spec, 0.0)
}

/// `C_k(j)` for `0 ≤ j ≤ k < order`: the coefficients of
/// `1/(m+α+n)_j = Σ_{k≥j} C_k(j) m^{-k}`.
///
/// Row `j` holds `[u^{k-j}] Π_{i<j} (1 + (α+n+i)u)^{-1}`, stored as `c[k][j]`.
pub fn laurent_coefficients(order: usize, params: &Params) -> Vec<Vec<f64>> {
    let shift = params.alpha + params.n as f64;
    let mut c = vec![vec![0.0; order]; order];
    // series of Π_{i<j}(1 + (shift+i)u)^{-1}, truncated at u^{order}
    let mut series = vec![0.0; order];
    if order > 0 {
        series[0] = 1.0;
    }
    for j in 0..order {
        for k in j..order {
            c[k][j] = series[k - j];
        }
        // multiply by 1/(1 + a u) = Σ (-a)^l u^l
        let a = shift + j as f64;
        for l in 1..order {
            series[l] -= a * series[l - 1];
        }
    }
    c
}

/// `B_k = Σ_{j≤k} A_j C_k(j)` for `k < order`.
pub fn coef_b(a: &[f64], params: &Params) -> Vec<f64> {
    let c = laurent_coefficients(a.len(), params);
    (0..a.len()).map(|k| (0..=k).map(|j| a[j] * c[k][j]).sum()).collect()
}

/// Reciprocal series: `D_0 = 1/B_0`, `Σ_{i=0}^k D_{k-i} B_i = 0` for `k ≥ 1`.
pub fn coef_d(b: &[f64]) -> Result<Vec<f64>> {
    let Some(&b0) = b.first() else {
        return Err(Error::InvalidParameter("empty B sequence".into()));
    };
    if b0 == 0.0 {
        return Err(Error::InvalidParameter("B_0 vanishes".into()));
    }
    let mut d = Vec::with_capacity(b.len());
    d.push(1.0 / b0);
    for k in 1..b.len() {
        let s: f64 = (1..=k).map(|i| b[i] * d[k - i]).sum();
        d.push(-s / b0);
    }
    Ok(d)
}

/// Closed-form Euclidean coefficient `γ_m(α) = Γ(n/2)Γ(m+α+n/2+1) / (Γ(α+n/2+1)Γ(m+n/2))`.
pub fn euclid_gamma(m: usize, params: &Params) -> Result<f64> {
    let (h, al) = (params.half_n(), params.alpha);
    let grow = gamma_ratio(&GammaRatioSpec::new(&[al + h + 1.0], &[h]), m as f64)?;
    let front = gamma_ratio(&GammaRatioSpec::new(&[h], &[al + h + 1.0]), 0.0)?;
    Ok(front * grow)
}

/// `γ_m(α)` from the radial rule of [`i_m_sequence`]:
/// `1/γ_m = (1/B(n/2, α+1)) ∫₀¹ t^{m+n/2-1}(1-t)^α dt`.
pub fn euclid_gamma_quadrature(m: usize, params: &Params) -> Result<f64> {
    Ok(1.0 / radial_moment(m, params)?)
}

/// `(1/B(n/2, α+1)) ∫₀¹ t^{m+n/2-1}(1-t)^α dt = B(m+n/2, α+1)/B(n/2, α+1)` by the radial rule.
pub fn radial_moment(m: usize, params: &Params) -> Result<f64> {
    let (_, high) = radial_rules(params)?;
    Ok(high.integrate(|t| t.powi(m as i32)) / beta(params.half_n(), params.alpha + 1.0)?)
}

/// `γ_m(α)` for `m = 0..=m_max` by the ratio `(m+α+n/2+1)/(m+n/2)`.
pub fn euclid_gamma_sequence(m_max: usize, params: &Params) -> Vec<f64> {
    let (h, al) = (params.half_n(), params.alpha);
    let mut out = Vec::with_capacity(m_max + 1);
    let mut v = 1.0;
    out.push(v);
    for m in 0..m_max {
        let mf = m as f64;
        v *= (mf + al + h + 1.0) / (mf + h);
        out.push(v);
    }
    out
}

/// Exact coefficients `c_m(α)` up to `m_max` with the expansion constants
/// `A_k`, `B_k` and `D_k` for `k < order`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefTable {
    pub params: Params,
    pub m_max: usize,
    pub order: usize,
    pub i_exact: Vec<f64>,
    pub c_exact: Vec<f64>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub d: Vec<f64>,
}

#[derive(Serialize)]
struct CoefTableJson<'a> {
    n: usize,
    alpha: f64,
    m_max: usize,
    #[serde(rename = "K")]
    order: usize,
    c_exact: &'a [f64],
    #[serde(rename = "A")]
    a: &'a [f64],
    #[serde(rename = "B")]
    b: &'a [f64],
    #[serde(rename = "D")]
    d: &'a [f64],
}

impl CoefTable {
    pub fn new(params: Params, m_max: usize, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter("expansion order K must be at least 1".into()));
        }
        let i_exact = i_m_sequence(m_max, &params)?;
        let c_exact = i_exact.iter().map(|i| 1.0 / i).collect();
        let a = (0..order).map(|k| coef_a(k, &params)).collect::<Result<Vec<_>>>()?;
        let b = coef_b(&a, &params);
        let d = coef_d(&b)?;
        Ok(Self { params, m_max, order, i_exact, c_exact, a, b, d })
    }

    pub fn with_defaults(params: Params) -> Result<Self> {
        Self::new(params, DEFAULT_M_MAX, DEFAULT_ORDER)
    }

    /// `c_m(α)` in the requested mode; exact values beyond the table are
    /// computed on demand.
    pub fn c_m(&self, m: usize, mode: CoefMode) -> Result<f64> {
        match mode {
            CoefMode::Exact if m <= self.m_max => Ok(self.c_exact[m]),
            CoefMode::Exact => Ok(1.0 / i_m_exact(m, &self.params)?),
            CoefMode::Asymptotic(k) => self.asymptotic(m, k),
        }
    }

    /// `Γ(m+α+n)/Γ(m+n-1) Σ_{k<K} D_k / m^k`; needs `m ≥ 1` and `K ≤ order`.
    pub fn asymptotic(&self, m: usize, order: usize) -> Result<f64> {
        if m == 0 {
            return Err(Error::InvalidParameter("asymptotic coefficients need m >= 1".into()));
        }
        if order == 0 || order > self.order {
            return Err(Error::InvalidParameter(format!(
                "asymptotic order must lie in 1..={}, got {order}",
                self.order
            )));
        }
        let mf = m as f64;
        let series: f64 = self.d[..order].iter().rev().fold(0.0, |acc, dk| acc / mf + dk);
        Ok(asymptotic_prefactor(mf, &self.params)? * series)
    }

    /// `c_m(α)` for `m = 0..=len-1`: exact up to `m_max`, asymptotic at full order beyond.
    ///
    /// The Gamma-ratio prefactor follows `P(m+1) = P(m)(m+α+n)/(m+n-1)` and is
    /// re-seeded from the log-Gamma evaluation every 4096 steps.
    pub fn sequence(&self, len: usize) -> Result<Vec<f64>> {
        let mut out: Vec<f64> = self.c_exact.iter().copied().take(len).collect();
        let (al, n) = (self.params.alpha, self.params.n as f64);
        let mut prefactor = 0.0;
        for m in out.len()..len {
            let mf = m as f64;
            if m == 0 {
                out.push(1.0);
                continue;
            }
            if prefactor == 0.0 || m % 4096 == 0 {
                prefactor = asymptotic_prefactor(mf, &self.params)?;
            } else {
                prefactor *= (mf - 1.0 + al + n) / (mf - 1.0 + n - 1.0);
            }
            let series: f64 = self.d.iter().rev().fold(0.0, |acc, dk| acc / mf + dk);
            out.push(prefactor * series);
        }
        Ok(out)
    }

    /// JSON object `{n, alpha, m_max, K, c_exact, A, B, D}`.
    pub fn to_json(&self) -> String {
        let view = CoefTableJson {
            n: self.params.n,
            alpha: self.params.alpha,
            m_max: self.m_max,
            order: self.order,
            c_exact: &self.c_exact,
            a: &self.a,
            b: &self.b,
            d: &self.d,
        };
        crate::json::to_string_pretty(&view).expect("plain data serializes")
    }
}
