//! Gegenbauer (ultraspherical) polynomials `C_m^{(λ)}`.

use crate::error::{Error, Result};

/// Value and derivative of `C_m^{(λ)}(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GegenbauerValue {
    pub value: f64,
    pub derivative: f64,
}

fn check(lambda: f64, t: f64) -> Result<()> {
    if !(lambda > -0.5) {
        return Err(Error::InvalidParameter(format!("Gegenbauer order needs lambda > -1/2, got {lambda}")));
    }
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("Gegenbauer argument needs |t| <= 1, got {t}")));
    }
    Ok(())
}

/// `C_m^{(λ)}(t)` by the three-term recurrence, with `d/dt C_m^{(λ)} = 2λ C_{m-1}^{(λ+1)}`.
pub fn gegenbauer(m: usize, lambda: f64, t: f64) -> Result<GegenbauerValue> {
    check(lambda, t)?;
    let value = recurrence(m, lambda, t);
    let derivative = if m == 0 { 0.0 } else { 2.0 * lambda * recurrence(m - 1, lambda + 1.0, t) };
    Ok(GegenbauerValue { value, derivative })
}

fn recurrence(m: usize, lambda: f64, t: f64) -> f64 {
    let mut prev = 1.0;
    if m == 0 {
        return prev;
    }
    let mut cur = 2.0 * lambda * t;
    for k in 1..m {
        let kf = k as f64;
        let next = (2.0 * (kf + lambda) * t * cur - (kf + 2.0 * lambda - 1.0) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `C_k^{(λ)}(t)` for `k = 0..=m`.
pub fn gegenbauer_sequence(m: usize, lambda: f64, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(m + 1);
    out.push(1.0);
    if m == 0 {
        return out;
    }
    out.push(2.0 * lambda * t);
    for k in 1..m {
        let kf = k as f64;
        let next = (2.0 * (kf + lambda) * t * out[k] - (kf + 2.0 * lambda - 1.0) * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    out
}

/// `C_m^{(λ)}(1) = (2λ)_m / m!`, for `k = 0..=m`.
pub fn gegenbauer_at_one(m: usize, lambda: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(m + 1);
    let mut v = 1.0;
    out.push(v);
    for k in 1..=m {
        let kf = k as f64;
        v *= (2.0 * lambda + kf - 1.0) / kf;
        out.push(v);
    }
    out
}

/// Precomputed recurrence coefficients for Clenshaw summation of
/// `Σ_k a_k C_k^{(λ)}(t)`.
///
/// The recurrence is `C_{k+1} = t p_k C_k + q_k C_{k-1}` with
/// `p_k = 2(k+λ)/(k+1)` and `q_k = -(k+2λ-1)/(k+1)`.
#[derive(Debug, Clone)]
pub struct GegenbauerSum {
    lambda: f64,
    p: Vec<f64>,
    q: Vec<f64>,
}

impl GegenbauerSum {
    pub fn new(lambda: f64, max_degree: usize) -> Self {
        let mut p = Vec::with_capacity(max_degree + 2);
        let mut q = Vec::with_capacity(max_degree + 2);
        for k in 0..max_degree + 2 {
            let kf = k as f64;
            p.push(2.0 * (kf + lambda) / (kf + 1.0));
            q.push(-(kf + 2.0 * lambda - 1.0) / (kf + 1.0));
        }
        Self { lambda, p, q }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn max_degree(&self) -> usize {
        self.p.len() - 2
    }

    /// `Σ_{k<coef.len()} coef[k] C_k^{(λ)}(t)`.
    pub fn eval(&self, coef: &[f64], t: f64) -> f64 {
        let n = coef.len();
        if n == 0 {
            return 0.0;
        }
        assert!(n < self.p.len(), "Gegenbauer sum longer than the precomputed table");
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for k in (1..n).rev() {
            let b0 = coef[k] + t * self.p[k] * b1 + self.q[k + 1] * b2;
            b2 = b1;
            b1 = b0;
        }
        // S = a_0 φ_0 + b_1 φ_1 + q_1 b_2 φ_0
        coef[0] + b1 * 2.0 * self.lambda * t + self.q[1] * b2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degrees() {
        for &t in &[-1.0, -0.3, 0.0, 0.8, 1.0] {
            let lam = 1.7;
            assert_eq!(gegenbauer(0, lam, t).unwrap().value, 1.0);
            assert!((gegenbauer(1, lam, t).unwrap().value - 2.0 * lam * t).abs() < 1e-15);
            // C_2 = 2λ(λ+1)t² - λ
            let c2 = 2.0 * lam * (lam + 1.0) * t * t - lam;
            assert!((gegenbauer(2, lam, t).unwrap().value - c2).abs() < 1e-14);
        }
    }

    #[test]
    fn legendre_case() {
        // λ = 1/2 gives Legendre: P_3 = (5t³ - 3t)/2
        let t = 0.37;
        let p3 = (5.0 * t * t * t - 3.0 * t) / 2.0;
        assert!((gegenbauer(3, 0.5, t).unwrap().value - p3).abs() < 1e-15);
    }

    #[test]
    fn derivative_matches_difference() {
        let (m, lam, t, h) = (6, 1.5, 0.41, 1e-5);
        let g = gegenbauer(m, lam, t).unwrap();
        let fd = (gegenbauer(m, lam, t + h).unwrap().value - gegenbauer(m, lam, t - h).unwrap().value) / (2.0 * h);
        assert!((g.derivative - fd).abs() < 1e-7 * g.derivative.abs().max(1.0));
    }

    #[test]
    fn endpoint_value() {
        let ones = gegenbauer_at_one(9, 0.5);
        assert!(ones.iter().all(|&v| (v - 1.0).abs() < 1e-15));
        let v = gegenbauer_at_one(7, 1.0);
        assert!((v[7] - 8.0).abs() < 1e-14);
        assert!((gegenbauer(7, 1.0, 1.0).unwrap().value - 8.0).abs() < 1e-13);
    }

    #[test]
    fn clenshaw_matches_direct() {
        let lam = 0.5;
        let coef: Vec<f64> = (0..40).map(|k| 0.9f64.powi(k) * (1.0 + 0.1 * k as f64)).collect();
        let sum = GegenbauerSum::new(lam, 60);
        for &t in &[-0.99, -0.2, 0.5, 1.0] {
            let seq = gegenbauer_sequence(39, lam, t);
            let direct: f64 = coef.iter().zip(&seq).map(|(a, c)| a * c).sum();
            assert!((sum.eval(&coef, t) - direct).abs() < 1e-13 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn invalid() {
        assert!(gegenbauer(2, -0.7, 0.1).is_err());
        assert!(gegenbauer(2, 0.5, 1.1).is_err());
    }
}
