//! Truncated zonal series `Σ_m a_m(|x|, |y|) Z_m(x, y)` with explicit tail bounds.
//!
//! * Bergman: `a_m = c_m(α) S_m(|x|) S_m(|y|)`
//! * Hardy: `a_m = S_m(|x|) S_m(|y|)`
//! * Euclidean Bergman: `a_m = γ_m(α)`
//!
//! The truncation index `M` is the first degree at which the majorant tail
//! `Σ_{m>M} u_m` falls below `tol · max(1, Σ_{m≤M} u_m)`, where
//! `u_m = a*_m dim H_m (|x||y|)^m` uses `S_m ≤ S_m(0)`. Past `M` the majorant
//! ratio is at most `q̄ = |x||y| exp((p+1)/(M+1))` with `p` the polynomial
//! growth exponent of `a*_m dim H_m`, so the tail is at most `u_{M+1}/(1-q̄)`.

use serde::Serialize;

use super::zonal::zonal_scale;
use crate::coefficients::{euclid_gamma_sequence, origin_sequence, s_derivative_sequence, s_sequence, CoefTable};
use crate::error::{Error, Result};
use crate::geometry::{dot, euclidean_norm, Params};
use crate::specfun::{gegenbauer_at_one, GegenbauerSum};

/// Default limit on the number of series terms.
pub const DEFAULT_TRUNCATION_CAP: usize = 20_000;

/// Which reproducing kernel a [`KernelSeries`] sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    Bergman,
    Hardy,
    Euclid,
}

/// Relative accuracy assumed for each series term.
pub const TERM_PRECISION: f64 = 64.0 * f64::EPSILON;

/// Truncated series value; the full series lies within `tail_bound` of `value`.
///
/// `rounding_bound` is [`TERM_PRECISION`] times the sum of the term magnitudes,
/// the floating-point resolution of `value` under cancellation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelValue {
    pub value: f64,
    pub tail_bound: f64,
    pub rounding_bound: f64,
    pub terms_used: usize,
}

impl KernelValue {
    /// `true` when the rounding bound is below `rel` times `|value|`.
    pub fn resolved(&self, rel: f64) -> bool {
        self.rounding_bound <= rel * self.value.abs()
    }
}

/// Coefficient tables for one kernel, valid up to a fixed number of terms.
#[derive(Debug, Clone)]
pub struct KernelSeries {
    kind: KernelKind,
    params: Params,
    tol: f64,
    cap: usize,
    coef: Vec<f64>,
    origin: Vec<f64>,
    kappa: Vec<f64>,
    at_one: Vec<f64>,
    at_one_up: Vec<f64>,
    lam_sum: GegenbauerSum,
    up_sum: GegenbauerSum,
    exponent: f64,
}

fn check_inside(x: &[f64]) -> Result<f64> {
    let r = euclidean_norm(x);
    if !(r < 1.0) {
        return Err(Error::Domain(format!("kernel arguments must lie in the open ball, got |x| = {r}")));
    }
    Ok(r)
}

fn unit_or_e1(v: &[f64], norm: f64) -> Vec<f64> {
    if norm == 0.0 {
        let mut e = vec![0.0; v.len()];
        e[0] = 1.0;
        e
    } else {
        v.iter().map(|c| c / norm).collect()
    }
}

impl KernelSeries {
    fn build(kind: KernelKind, params: Params, coef: Vec<f64>, tol: f64, cap: usize) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
        }
        let n = params.n;
        let len = cap + 2;
        let lam = params.half_n() - 1.0;
        let origin = if kind == KernelKind::Euclid { vec![1.0; len] } else { origin_sequence(len - 1, n) };
        let nf = n as f64;
        let al = params.alpha;
        let exponent = match kind {
            KernelKind::Bergman => al + 2.0 * nf - 3.0,
            KernelKind::Hardy => 2.0 * nf - 4.0,
            KernelKind::Euclid => al + nf - 1.0,
        };
        Ok(Self {
            kind,
            params,
            tol,
            cap,
            coef,
            origin,
            kappa: (0..len).map(|m| zonal_scale(m, n)).collect(),
            at_one: gegenbauer_at_one(len - 1, lam),
            at_one_up: gegenbauer_at_one(len - 1, lam + 1.0),
            lam_sum: GegenbauerSum::new(lam, len),
            up_sum: GegenbauerSum::new(lam + 1.0, len),
            exponent,
        })
    }

    /// `R_α` from a coefficient table.
    pub fn bergman(table: &CoefTable, tol: f64, cap: usize) -> Result<Self> {
        let coef = table.sequence(cap + 2)?;
        Self::build(KernelKind::Bergman, table.params, coef, tol, cap)
    }

    /// Hardy kernel `K` in dimension `n`.
    pub fn hardy(n: usize, tol: f64, cap: usize) -> Result<Self> {
        Self::build(KernelKind::Hardy, Params::new(n, 0.0)?, vec![1.0; cap + 2], tol, cap)
    }

    /// Euclidean harmonic Bergman kernel with the closed-form `γ_m(α)`.
    pub fn euclid(params: Params, tol: f64, cap: usize) -> Result<Self> {
        let coef = euclid_gamma_sequence(cap + 1, &params);
        Self::build(KernelKind::Euclid, params, coef, tol, cap)
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Growth exponent `α + n` (Bergman), `n - 1` (Hardy) or `α + n` (Euclid)
    /// of the kernel on the diagonal.
    pub fn diagonal_exponent(&self) -> f64 {
        let n = self.params.n as f64;
        match self.kind {
            KernelKind::Hardy => n - 1.0,
            _ => self.params.alpha + n,
        }
    }

    fn radial(&self) -> bool {
        self.kind != KernelKind::Euclid
    }

    /// Value majorant `u_m / q^m`.
    fn value_weight(&self, m: usize) -> f64 {
        self.coef[m] * self.origin[m] * self.origin[m] * self.kappa[m] * self.at_one[m]
    }

    /// Majorant of one gradient component at degree `m`.
    fn gradient_weight(&self, m: usize, r: f64, rho: f64, qm: f64) -> f64 {
        if m == 0 {
            return 0.0;
        }
        let nf = self.params.n as f64;
        let shifted = if r > 0.0 {
            qm / r
        } else if m == 1 {
            rho
        } else {
            0.0
        };
        let base = self.coef[m] * self.origin[m] * self.origin[m] * self.kappa[m];
        // |S_m'(r)| ≤ (n-2) S_m(0) (1-r²)^{min(0, n/2-2)}
        let slope = if self.radial() {
            (nf - 2.0) * (1.0 - r * r).powf((nf / 2.0 - 2.0).min(0.0)) * qm * self.at_one[m]
        } else {
            0.0
        };
        base * (slope + shifted * (m as f64 * self.at_one[m] + (nf - 2.0) * self.at_one_up[m - 1]))
    }

    /// Truncation index and tail bound for `|x| = r`, `|y| = ρ`.
    fn truncation(&self, r: f64, rho: f64, gradient: bool) -> Result<(usize, f64)> {
        let q = r * rho;
        if q == 0.0 {
            // only m = 0 (value) or m ≤ 1 (gradient) contribute
            return Ok((usize::from(gradient), 0.0));
        }
        let p = self.exponent + if gradient { 1.0 } else { 0.0 };
        let weight =
            |m: usize, qm: f64| if gradient { self.gradient_weight(m, r, rho, qm) } else { self.value_weight(m) * qm };
        let mut qm = 1.0;
        let mut mass = 0.0;
        for m in 0..self.cap {
            mass += weight(m, qm);
            qm *= q;
            if m == 0 {
                continue;
            }
            let next = weight(m + 1, qm);
            let qbar = q * ((p + 1.0) / (m as f64 + 1.0)).exp();
            if qbar < 1.0 {
                let tail = next / (1.0 - qbar);
                if tail <= self.tol * mass.max(1.0) {
                    return Ok((m, tail));
                }
            }
        }
        Err(Error::Truncation { cap: self.cap, product: q })
    }

    fn pair(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
        if x.len() != y.len() {
            return Err(Error::InvalidParameter("kernel arguments of different dimensions".into()));
        }
        Ok((check_inside(x)?, check_inside(y)?))
    }

    /// Series value at `(x, y)`.
    pub fn eval(&self, x: &[f64], y: &[f64]) -> Result<KernelValue> {
        let (r, rho) = Self::pair(x, y)?;
        if x.len() != self.params.n {
            return Err(Error::InvalidParameter(format!("expected points of dimension {}", self.params.n)));
        }
        let t = dot(&unit_or_e1(x, r), &unit_or_e1(y, rho)).clamp(-1.0, 1.0);
        Ok(self.slice(r, rho)?.eval(t))
    }

    /// Coefficients for all `(x, y)` with `|x| = r`, `|y| = ρ`, as a function of the cosine.
    pub fn slice(&self, r: f64, rho: f64) -> Result<KernelSlice<'_>> {
        let (m_top, tail) = self.truncation(r, rho, false)?;
        let q = r * rho;
        let (sr, srho) = self.radial_factors(r, rho, m_top)?;
        let mut qm = 1.0;
        let coef: Vec<f64> = (0..=m_top)
            .map(|m| {
                let a = self.coef[m] * sr[m] * srho[m] * self.kappa[m] * qm;
                qm *= q;
                a
            })
            .collect();
        let magnitude = magnitude(&coef, &self.at_one);
        Ok(KernelSlice { coef, tail, rounding: TERM_PRECISION * magnitude, sum: &self.lam_sum })
    }

    fn radial_factors(&self, r: f64, rho: f64, m_top: usize) -> Result<(Vec<f64>, Vec<f64>)> {
        if !self.radial() {
            return Ok((vec![1.0; m_top + 1], vec![1.0; m_top + 1]));
        }
        let sr = s_sequence(r, m_top, &self.params)?;
        let srho = if rho == r { sr.clone() } else { s_sequence(rho, m_top, &self.params)? };
        Ok((sr, srho))
    }

    /// Gradient coefficients for `|x| = r`, `|y| = ρ`.
    pub fn gradient_slice(&self, r: f64, rho: f64) -> Result<GradientSlice<'_>> {
        let (m_top, tail) = self.truncation(r, rho, true)?;
        let (sr, srho) = self.radial_factors(r, rho, m_top)?;
        let dsr = if self.radial() { s_derivative_sequence(r, m_top, &self.params)? } else { vec![0.0; m_top + 1] };
        let nf = self.params.n as f64;
        let mut outer = Vec::with_capacity(m_top + 1);
        let mut inner = Vec::with_capacity(m_top);
        let mut rm = 1.0; // r^m
        let mut rhom = 1.0; // ρ^m
        for m in 0..=m_top {
            let rm1 = if m == 0 {
                0.0
            } else if r > 0.0 {
                rm / r
            } else if m == 1 {
                1.0
            } else {
                0.0
            };
            let base = self.coef[m] * srho[m] * self.kappa[m] * rhom;
            outer.push(base * (dsr[m] * rm + m as f64 * sr[m] * rm1));
            if m >= 1 {
                inner.push(base * sr[m] * rm1 * (nf - 2.0));
            }
            rm *= r;
            rhom *= rho;
        }
        let rounding = TERM_PRECISION * (magnitude(&outer, &self.at_one) + 2.0 * magnitude(&inner, &self.at_one_up));
        Ok(GradientSlice { outer, inner, tail, rounding, lam_sum: &self.lam_sum, up_sum: &self.up_sum })
    }

    /// `∇_x` of the series at `(x, y)`.
    pub fn gradient(&self, x: &[f64], y: &[f64]) -> Result<Vec<KernelValue>> {
        let (r, rho) = Self::pair(x, y)?;
        let zeta = unit_or_e1(x, r);
        let eta = unit_or_e1(y, rho);
        let t = dot(&zeta, &eta).clamp(-1.0, 1.0);
        Ok(self.gradient_slice(r, rho)?.eval(&zeta, &eta, t))
    }
}

/// `Σ |coef_m| C_m(1)`, which bounds `Σ |coef_m C_m(t)|` on `[-1, 1]`.
fn magnitude(coef: &[f64], at_one: &[f64]) -> f64 {
    coef.iter().zip(at_one).map(|(c, a)| c.abs() * a).sum()
}

/// Series coefficients at fixed radii, summed by Clenshaw's method.
#[derive(Debug, Clone)]
pub struct KernelSlice<'a> {
    coef: Vec<f64>,
    tail: f64,
    rounding: f64,
    sum: &'a GegenbauerSum,
}

impl KernelSlice<'_> {
    pub fn eval(&self, t: f64) -> KernelValue {
        KernelValue {
            value: self.sum.eval(&self.coef, t),
            tail_bound: self.tail,
            rounding_bound: self.rounding,
            terms_used: self.coef.len(),
        }
    }

    pub fn terms(&self) -> usize {
        self.coef.len()
    }
}

/// Gradient series at fixed radii:
/// `∇ = ζ (G₁ - t G₂) + η G₂` with `G₁ = Σ b_m C_m^{(λ)}(t)`, `G₂ = Σ e_m C_{m-1}^{(λ+1)}(t)`.
#[derive(Debug, Clone)]
pub struct GradientSlice<'a> {
    outer: Vec<f64>,
    inner: Vec<f64>,
    tail: f64,
    rounding: f64,
    lam_sum: &'a GegenbauerSum,
    up_sum: &'a GegenbauerSum,
}

impl GradientSlice<'_> {
    pub fn eval(&self, zeta: &[f64], eta: &[f64], t: f64) -> Vec<KernelValue> {
        let g1 = self.lam_sum.eval(&self.outer, t);
        let g2 = self.up_sum.eval(&self.inner, t);
        let terms = self.outer.len();
        zeta.iter()
            .zip(eta)
            .map(|(&z, &e)| KernelValue {
                value: z * (g1 - t * g2) + e * g2,
                tail_bound: self.tail,
                rounding_bound: self.rounding,
                terms_used: terms,
            })
            .collect()
    }
}

/// `R_α(x, y)` with the default truncation cap.
pub fn bergman_kernel(x: &[f64], y: &[f64], table: &CoefTable, tol: f64) -> Result<KernelValue> {
    KernelSeries::bergman(table, tol, DEFAULT_TRUNCATION_CAP)?.eval(x, y)
}

/// `∇_x R_α(x, y)` with the default truncation cap.
pub fn bergman_kernel_grad(x: &[f64], y: &[f64], table: &CoefTable, tol: f64) -> Result<Vec<KernelValue>> {
    KernelSeries::bergman(table, tol, DEFAULT_TRUNCATION_CAP)?.gradient(x, y)
}

/// Hardy kernel `K(x, y)` with the default truncation cap.
pub fn hardy_kernel(x: &[f64], y: &[f64], tol: f64) -> Result<KernelValue> {
    KernelSeries::hardy(x.len(), tol, DEFAULT_TRUNCATION_CAP)?.eval(x, y)
}

/// Euclidean harmonic Bergman kernel with the default truncation cap.
pub fn euclid_kernel(x: &[f64], y: &[f64], params: &Params, tol: f64) -> Result<KernelValue> {
    KernelSeries::euclid(*params, tol, DEFAULT_TRUNCATION_CAP)?.eval(x, y)
}
