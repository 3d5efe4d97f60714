//! Gauss hypergeometric function `₂F₁(a, b; c; z)` for real arguments `z ≤ 1`.
//!
//! Strategy by region:
//! - `|z| ≤ 1/2` and `z ∈ (0, 0.9]`: power series, written in the Euler form
//!   `(1-z)^{c-a-b} F(c-a, c-b; c; z)` whenever that has the positive
//!   parameter excess.
//! - `z < -1/2`: Pfaff transformation onto `z/(z-1) ∈ (1/3, 1)`.
//! - `z` near 1: the `1 - z` connection formulas, including the logarithmic
//!   form when `c - a - b` is an integer.
//! - `z = 1`: Gauss's closed form.

use super::gamma::{digamma, ln_gamma_product, nonpositive_integer, Factor};
use crate::error::{Error, Result};

const MAX_TERMS: usize = 2_000_000;

/// Parameters `(a, b, c)` of `₂F₁`; `c` is never a nonpositive integer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams21 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl HypParams21 {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite 2F1 parameters ({a}, {b}, {c})")));
        }
        if nonpositive_integer(c) {
            return Err(Error::Pole(c));
        }
        Ok(Self { a, b, c })
    }

    /// Parameter excess `c - a - b`.
    pub fn excess(&self) -> f64 {
        self.c - self.a - self.b
    }
}

/// `₂F₁(a, b; c; z)` for `z ≤ 1`.
pub fn hyp2f1(p: &HypParams21, z: f64) -> Result<f64> {
    let HypParams21 { a, b, c } = *p;
    if z.is_nan() || z > 1.0 {
        return Err(Error::Domain(format!("2F1 needs z <= 1, got {z}")));
    }
    if z == 0.0 || a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    if let Some(deg) = terminating_degree(a, b) {
        return Ok(polynomial(a, b, c, z, deg));
    }
    if z == 1.0 {
        return gauss_value(a, b, c);
    }
    if z < 0.0 {
        if z >= -0.5 {
            return series(a, b, c, z);
        }
        // F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1))
        let zeta = z / (z - 1.0);
        let (a2, b2) = if (c - b).abs() < (c - a).abs() { (a, c - b) } else { (b, c - a) };
        let lead = (1.0 - z).powf(-a2);
        let inner = HypParams21::new(a2, b2, c)?;
        return Ok(lead * hyp2f1(&inner, zeta)?);
    }
    unit_interval(a, b, c, z)
}

/// `Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b))`, finite only when `c - a - b > 0`.
pub fn gauss_value(a: f64, b: f64, c: f64) -> Result<f64> {
    let s = c - a - b;
    if s <= 0.0 {
        return Err(Error::Divergence(format!("F(a,b;c;1) needs c-a-b > 0, got {s}")));
    }
    let r = ln_gamma_product(&[
        Factor::num(0.0, c),
        Factor::num(0.0, s),
        Factor::den(0.0, c - a),
        Factor::den(0.0, c - b),
    ])?;
    Ok(r.value())
}

fn terminating_degree(a: f64, b: f64) -> Option<usize> {
    let da = nonpositive_integer(a).then(|| (-a) as usize);
    let db = nonpositive_integer(b).then(|| (-b) as usize);
    match (da, db) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    }
}

fn polynomial(a: f64, b: f64, c: f64, z: f64, deg: usize) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..deg {
        let k = k as f64;
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
    }
    sum
}

/// Direct power series with the three-consecutive-small-terms stopping rule.
pub(crate) fn series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term.abs() < 1e-16 * sum.abs() {
            small += 1;
            if small == 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
        if term == 0.0 {
            return Ok(sum);
        }
    }
    Err(Error::Convergence(format!("2F1 series at z = {z} did not converge")))
}

fn excess_positive_series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let s = c - a - b;
    if s >= 0.0 {
        series(a, b, c, z)
    } else {
        Ok((1.0 - z).powf(s) * series(c - a, c - b, c, z)?)
    }
}

fn unit_interval(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if z <= 0.9 {
        return excess_positive_series(a, b, c, z);
    }
    let w = 1.0 - z;
    let scale = a.abs().max(b.abs()).max((c - a).abs()).max((c - b).abs());
    if scale * w > 2.0 {
        return excess_positive_series(a, b, c, z);
    }
    let s = c - a - b;
    let rs = s.round();
    if s == rs {
        if s >= 0.0 {
            log_connection(a, b, s as usize, z)
        } else {
            Ok(w.powf(s) * log_connection(c - a, c - b, (-s) as usize, z)?)
        }
    } else if (s - rs).abs() > 1e-2 {
        connection(a, b, c, z)
    } else {
        excess_positive_series(a, b, c, z)
    }
}

/// Non-degenerate `1 - z` connection formula:
/// `F = A F(a,b;1-s;w) + w^s B F(c-a,c-b;1+s;w)`, `s = c-a-b`, `w = 1-z`.
fn connection(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let s = c - a - b;
    let w = 1.0 - z;
    let first = ln_gamma_product(&[
        Factor::num(0.0, c),
        Factor::num(0.0, s),
        Factor::den(0.0, c - a),
        Factor::den(0.0, c - b),
    ])?
    .value();
    let second =
        ln_gamma_product(&[Factor::num(0.0, c), Factor::num(0.0, -s), Factor::den(0.0, a), Factor::den(0.0, b)])?
            .value();
    let mut out = 0.0;
    if first != 0.0 {
        out += first * series_or_poly(a, b, 1.0 - s, w)?;
    }
    if second != 0.0 {
        out += second * w.powf(s) * series_or_poly(c - a, c - b, 1.0 + s, w)?;
    }
    Ok(out)
}

fn series_or_poly(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if let Some(deg) = terminating_degree(a, b) {
        return Ok(polynomial(a, b, c, z, deg));
    }
    series(a, b, c, z)
}

/// Connection formula for `F(a, b; a+b+l; z)` with integer `l ≥ 0`, which
/// carries a `ln(1-z)` term.
fn log_connection(a: f64, b: f64, l: usize, z: f64) -> Result<f64> {
    let w = 1.0 - z;
    let lf = l as f64;
    let c = a + b + lf;
    let mut out = 0.0;
    if l > 0 {
        // Γ(l)Γ(c) / (Γ(a+l)Γ(b+l)) Σ_{k<l} (a)_k (b)_k / (k! (1-l)_k) w^k
        let pref = ln_gamma_product(&[
            Factor::num(0.0, lf),
            Factor::num(0.0, c),
            Factor::den(0.0, a + lf),
            Factor::den(0.0, b + lf),
        ])?
        .value();
        if pref != 0.0 {
            let mut term = 1.0;
            let mut sum = 1.0;
            for k in 0..l - 1 {
                let k = k as f64;
                term *= (a + k) * (b + k) / ((k + 1.0) * (1.0 - lf + k)) * w;
                sum += term;
            }
            out += pref * sum;
        }
    }
    // -(z-1)^l Γ(c)/(Γ(a)Γ(b)) Σ_k (a+l)_k (b+l)_k / (k! (k+l)!) w^k
    //   × [ln w - ψ(k+1) - ψ(k+l+1) + ψ(a+k+l) + ψ(b+k+l)]
    let pref = ln_gamma_product(&[Factor::num(0.0, c), Factor::den(0.0, a), Factor::den(0.0, b)])?.value();
    if pref == 0.0 {
        return Ok(out);
    }
    let mut fact_l = 1.0;
    for j in 1..=l {
        fact_l *= j as f64;
    }
    let mut psi1 = digamma(1.0)?;
    let mut psi2 = digamma(lf + 1.0)?;
    let mut psi3 = digamma_or_zero(a + lf)?;
    let mut psi4 = digamma_or_zero(b + lf)?;
    let lnw = w.ln();
    let mut coef = 1.0 / fact_l;
    let mut sum = 0.0;
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let term = coef * (lnw - psi1 - psi2 + psi3 + psi4);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() || coef == 0.0 {
            small += 1;
            if small == 3 {
                let sign = if l % 2 == 0 { -1.0 } else { 1.0 };
                return Ok(out + sign * w.powi(l as i32) * pref * sum);
            }
        } else {
            small = 0;
        }
        coef *= (a + lf + kf) * (b + lf + kf) / ((kf + 1.0) * (kf + lf + 1.0)) * w;
        psi1 += 1.0 / (kf + 1.0);
        psi2 += 1.0 / (kf + lf + 1.0);
        psi3 = step_digamma(psi3, a + lf + kf)?;
        psi4 = step_digamma(psi4, b + lf + kf)?;
    }
    Err(Error::Convergence(format!("2F1 logarithmic connection at z = {z} did not converge")))
}

/// ψ at a pole only arises in products with a vanishing Pochhammer factor.
fn digamma_or_zero(x: f64) -> Result<f64> {
    if nonpositive_integer(x) {
        Ok(0.0)
    } else {
        digamma(x)
    }
}

fn step_digamma(psi: f64, x: f64) -> Result<f64> {
    if nonpositive_integer(x + 1.0) {
        return Ok(0.0);
    }
    if nonpositive_integer(x) {
        return digamma(x + 1.0);
    }
    Ok(psi + 1.0 / x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: f64, b: f64, c: f64, z: f64) -> f64 {
        hyp2f1(&HypParams21::new(a, b, c).unwrap(), z).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn trivial_and_closed_forms() {
        assert_eq!(f(0.3, 0.7, 1.9, 0.0), 1.0);
        assert!(rel(f(1.0, -0.5, 2.5, 1.0), 0.75) < 1e-15);
        // F(1,1;2;z) = -ln(1-z)/z
        for &z in &[-3.0f64, -0.7, -0.2, 0.3, 0.89, 0.95, 0.999, 0.999_999] {
            let want = -(1.0 - z).ln() / z;
            assert!(rel(f(1.0, 1.0, 2.0, z), want) < 1e-13, "z = {z}: {} vs {want}", f(1.0, 1.0, 2.0, z));
        }
        // F(a,b;b;z) = (1-z)^{-a}
        for &z in &[-5.0, -0.4, 0.5, 0.97, 0.9999] {
            assert!(rel(f(0.7, 2.3, 2.3, z), (1.0 - z).powf(-0.7)) < 1e-13, "z = {z}: {}", f(0.7, 2.3, 2.3, z));
        }
    }

    #[test]
    fn reference_values() {
        // values computed with 30-digit arithmetic
        let cases = [
            (1.5, -0.5, 3.5, 0.95, 0.753_974_933_899_991_24),
            (20.0, -0.5, 21.5, 0.9999, 0.245_015_283_816_445),
            (0.3, 0.4, 0.8, 0.99, 1.635_803_495_447_777_3),
            (2.0, 3.0, 4.5, 0.9, 12.862_862_523_589_223),
            (300.0, -0.5, 301.5, 0.99999, 0.065_108_758_323_198_411),
            (1.5, 0.5, 3.5, 0.999_999, 1.472_619_352_429_609_4),
            (-0.3, 1.7, 2.05, 0.97, 0.547_318_682_046_618_36),
            (0.7, -0.4, 2.1, 0.5, 0.926_567_042_532_141_47),
            (2.5, -1.5, 6.0, -7.0, 8.075_070_052_879_371),
        ];
        for (a, b, c, z, want) in cases {
            let got = f(a, b, c, z);
            assert!(rel(got, want) < 1e-12, "F({a},{b};{c};{z}) = {got}, want {want}");
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(hyp2f1(&HypParams21::new(1.0, 1.0, 2.0).unwrap(), 1.5), Err(Error::Domain(_))));
        assert!(matches!(hyp2f1(&HypParams21::new(1.0, 1.0, 2.0).unwrap(), 1.0), Err(Error::Divergence(_))));
        assert!(HypParams21::new(1.0, 1.0, -2.0).is_err());
    }
}
