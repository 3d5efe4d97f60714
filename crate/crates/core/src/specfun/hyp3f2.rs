//! Generalized hypergeometric series `₃F₂(a, b, c; d, e; z)`, mainly at `z = 1`.
//!
//! At unit argument the terms decay like `k^{-(1+s)}` with
//! `s = d + e - a - b - c`, far too slowly for direct summation. The sum is
//! split at an index `N` and the tail `Σ_{k≥N} t_k` is evaluated from the
//! large-`k` expansion of the term ratio,
//! `t_k ≈ K k^{-σ} Σ_j ε_j k^{-j}`, summed against Hurwitz zeta values.

use super::gamma::nonpositive_integer;
use crate::error::{Error, Result};

const BERNOULLI: [f64; 21] = [
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
    0.0,
    43867.0 / 798.0,
    0.0,
    -174_611.0 / 330.0,
];

/// Number of correction terms in the tail expansion.
const TAIL_ORDER: usize = 14;

/// Parameters of `₃F₂(a, b, c; d, e; ·)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams32 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

impl HypParams32 {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64) -> Result<Self> {
        for x in [a, b, c, d, e] {
            if !x.is_finite() {
                return Err(Error::InvalidParameter(format!("non-finite 3F2 parameter {x}")));
            }
        }
        for x in [d, e] {
            if nonpositive_integer(x) {
                return Err(Error::Pole(x));
            }
        }
        Ok(Self { a, b, c, d, e })
    }

    /// Saalschützian excess `d + e - a - b - c`.
    pub fn excess(&self) -> f64 {
        self.d + self.e - self.a - self.b - self.c
    }
}

/// Sum of `₃F₂(a, b, c; d, e; 1)`.
pub fn hyp3f2_unit(p: &HypParams32) -> Result<f64> {
    unit_series(&[p.a, p.b, p.c], &[p.d, p.e])
}

/// `₃F₂(a, b, c; d, e; z)` for `-1 ≤ z ≤ 1`.
pub fn hyp3f2(p: &HypParams32, z: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&z) {
        return Err(Error::Domain(format!("3F2 is implemented for |z| <= 1, got {z}")));
    }
    if z == 1.0 {
        return hyp3f2_unit(p);
    }
    let upper = [p.a, p.b, p.c];
    if z == -1.0 && p.excess() <= -1.0 && terminating_degree(&upper).is_none() {
        return Err(Error::Divergence(format!("3F2 at z = -1 needs excess > -1, got {}", p.excess())));
    }
    let limit = terminating_degree(&upper).unwrap_or(usize::MAX);
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut small = 0;
    let mut k = 0usize;
    while k < limit {
        let kf = k as f64;
        term *= (p.a + kf) * (p.b + kf) * (p.c + kf) / ((p.d + kf) * (p.e + kf) * (kf + 1.0)) * z;
        sum += term;
        k += 1;
        if term.abs() < 1e-16 * sum.abs() {
            small += 1;
            if small == 3 {
                break;
            }
        } else {
            small = 0;
        }
        if k > 10_000_000 {
            return Err(Error::Convergence(format!("3F2 series at z = {z} did not converge")));
        }
    }
    Ok(sum)
}

fn terminating_degree(upper: &[f64]) -> Option<usize> {
    upper.iter().filter(|&&a| nonpositive_integer(a)).map(|&a| (-a) as usize).min()
}

/// `Σ_k Π(upper_i)_k / (Π(lower_j)_k k!)` with `upper.len() == lower.len() + 1`.
///
/// Converges when `σ - 1 = Σ lower - Σ upper > 0`.
pub fn unit_series(upper: &[f64], lower: &[f64]) -> Result<f64> {
    if upper.len() != lower.len() + 1 {
        return Err(Error::InvalidParameter("unit-argument series needs p = q + 1".into()));
    }
    for &b in lower {
        if nonpositive_integer(b) {
            return Err(Error::Pole(b));
        }
    }
    let ratio = |k: f64| -> f64 {
        let mut r = 1.0 / (k + 1.0);
        for &a in upper {
            r *= a + k;
        }
        for &b in lower {
            r /= b + k;
        }
        r
    };
    if let Some(deg) = terminating_degree(upper) {
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 0..deg {
            term *= ratio(k as f64);
            sum += term;
        }
        return Ok(sum);
    }
    let excess: f64 = lower.iter().sum::<f64>() - upper.iter().sum::<f64>();
    if excess <= 0.0 {
        return Err(Error::Divergence(format!("unit-argument series needs positive excess, got {excess}")));
    }
    let scale = upper.iter().chain(lower).fold(1.0f64, |m, x| m.max(x.abs()));
    let n_split = (30.0 * scale).max(200.0).ceil();
    if n_split > 5.0e6 {
        return Err(Error::Convergence(format!("parameters too large for unit-argument summation ({scale})")));
    }
    let n_split = n_split as usize;
    let mut term = 1.0;
    let mut head = 0.0;
    for k in 0..n_split {
        head += term;
        term *= ratio(k as f64);
    }
    if term == 0.0 {
        return Ok(head);
    }
    Ok(head + tail_sum(upper, lower, excess + 1.0, n_split as f64, term))
}

/// `Σ_{k≥N} t_k` given `t_N` and the asymptotic exponent `σ`.
fn tail_sum(upper: &[f64], lower: &[f64], sigma: f64, n: f64, t_n: f64) -> f64 {
    // ln t_k = ln K - σ ln k + Σ_j δ_j k^{-j},
    // δ_j = (-1)^{j+1} / (j (j+1)) Σ ± B_{j+1}(arg)
    let mut delta = [0.0; TAIL_ORDER + 1];
    for (j, d) in delta.iter_mut().enumerate().skip(1) {
        let mut s = 0.0;
        for &a in upper {
            s += bernoulli_poly(j + 1, a);
        }
        for &b in lower {
            s -= bernoulli_poly(j + 1, b);
        }
        s -= bernoulli_poly(j + 1, 1.0);
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        *d = sign * s / ((j * (j + 1)) as f64);
    }
    // exp(Σ δ_j u^j) = Σ ε_j u^j
    let mut eps = [0.0; TAIL_ORDER + 1];
    eps[0] = 1.0;
    for j in 1..=TAIL_ORDER {
        let mut s = 0.0;
        for i in 1..=j {
            s += i as f64 * delta[i] * eps[j - i];
        }
        eps[j] = s / j as f64;
    }
    let mut at_n = 0.0;
    let mut tail = 0.0;
    for (j, e) in eps.iter().enumerate() {
        at_n += e * n.powi(-(j as i32));
        tail += e * hurwitz_zeta(sigma + j as f64, n) * n.powf(sigma);
    }
    t_n * tail / at_n
}

/// `B_n(x) = Σ_k C(n,k) B_k x^{n-k}`.
fn bernoulli_poly(n: usize, x: f64) -> f64 {
    let mut binom = 1.0;
    let mut acc = 0.0;
    for k in 0..=n {
        acc += binom * BERNOULLI[k] * x.powi((n - k) as i32);
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    acc
}

/// Hurwitz zeta `ζ(s, q) = Σ_{k≥0} (k + q)^{-s}` for `s > 1`, `q ≥ 10`,
/// by Euler–Maclaurin summation.
pub(crate) fn hurwitz_zeta(s: f64, q: f64) -> f64 {
    debug_assert!(s > 1.0 && q >= 10.0);
    let mut acc = q.powf(1.0 - s) / (s - 1.0) + 0.5 * q.powf(-s);
    // B_{2j}/(2j)! (s)_{2j-1} q^{-s-2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut qpow = q.powf(-s - 1.0);
    let q2 = q * q;
    for j in 1..=8usize {
        let term = BERNOULLI[2 * j] / fact * rising * qpow;
        acc += term;
        if term.abs() < 1e-18 * acc.abs() {
            break;
        }
        let jf = j as f64;
        rising *= (s + 2.0 * jf - 1.0) * (s + 2.0 * jf);
        fact *= (2.0 * jf + 1.0) * (2.0 * jf + 2.0);
        qpow /= q2;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::gamma;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn zeta_values() {
        // ζ(2, 10) = π²/6 - Σ_{k=1}^{9} 1/k²
        let head: f64 = (1..10).map(|k| 1.0 / (k * k) as f64).sum();
        let want = std::f64::consts::PI.powi(2) / 6.0 - head;
        assert!(rel(hurwitz_zeta(2.0, 10.0), want) < 1e-15);
    }

    #[test]
    fn zero_parameter_terminates() {
        let p = HypParams32::new(0.0, 1.3, 2.2, 0.7, 0.9).unwrap();
        assert_eq!(hyp3f2_unit(&p).unwrap(), 1.0);
    }

    #[test]
    fn saalschutz_sum() {
        // 3F2(-m, b, c; d, 1+b+c-d-m; 1) = (d-b)_m (d-c)_m / ((d)_m (d-b-c)_m)
        let (b, c, d) = (0.4, 1.3, 2.9);
        let m = 5.0;
        let p = HypParams32::new(-m, b, c, d, 1.0 + b + c - d - m).unwrap();
        let poch = |x: f64| (0..5).map(|j| x + j as f64).product::<f64>();
        let want = poch(d - b) * poch(d - c) / (poch(d) * poch(d - b - c));
        assert!(rel(hyp3f2_unit(&p).unwrap(), want) < 1e-13);
    }

    #[test]
    fn gauss_through_unit_series() {
        let (a, b, c) = (0.3, -0.45, 1.1);
        let want = gamma(c).unwrap() * gamma(c - a - b).unwrap() / (gamma(c - a).unwrap() * gamma(c - b).unwrap());
        assert!(rel(unit_series(&[a, b], &[c]).unwrap(), want) < 1e-13);
    }

    #[test]
    fn divergent() {
        let p = HypParams32::new(1.0, 1.0, 1.0, 1.0, 1.5).unwrap();
        assert!(matches!(hyp3f2_unit(&p), Err(Error::Divergence(_))));
    }

    #[test]
    fn negative_argument() {
        // 3F2(a, b, c; b, c; z) = (1 - z)^{-a}
        let p = HypParams32::new(0.7, 1.2, 2.5, 1.2, 2.5).unwrap();
        assert!(rel(hyp3f2(&p, -0.8).unwrap(), 1.8f64.powf(-0.7)) < 1e-14);
    }
}
