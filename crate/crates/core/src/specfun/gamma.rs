//! Log-domain Gamma arithmetic with sign tracking.
//!
//! Every Gamma value is reduced to Stirling's series above a fixed threshold.
//! Arguments are carried as a `(large, offset)` pair so that ratios such as
//! `Γ(k + a) / Γ(k + b)` keep full relative accuracy for large `k`: the large
//! parts cancel exactly and only the offsets enter the logarithms.

use crate::error::{Error, Result};
use std::f64::consts::PI;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const STIRLING_MIN: f64 = 10.0;

/// `B_{2j} / (2j (2j - 1))` for `j = 1..=8`.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Shifted Gamma arguments `Γ(a_i + k)` in the numerator over `Γ(b_i + k)` in
/// the denominator.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GammaRatioSpec {
    pub numerator_offsets: Vec<f64>,
    pub denominator_offsets: Vec<f64>,
}

impl GammaRatioSpec {
    pub fn new(numerator_offsets: &[f64], denominator_offsets: &[f64]) -> Self {
        Self { numerator_offsets: numerator_offsets.to_vec(), denominator_offsets: denominator_offsets.to_vec() }
    }
}

/// One Gamma factor `Γ(large + offset)^power`, `power = ±1`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Factor {
    pub large: f64,
    pub offset: f64,
    pub power: f64,
}

impl Factor {
    pub fn num(large: f64, offset: f64) -> Self {
        Self { large, offset, power: 1.0 }
    }
    pub fn den(large: f64, offset: f64) -> Self {
        Self { large, offset, power: -1.0 }
    }
}

/// Signed logarithm: the value is `sign * exp(ln_abs)`; `sign == 0` encodes an exact zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    pub ln_abs: f64,
    pub sign: f64,
}

impl SignedLog {
    pub fn value(self) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * self.ln_abs.exp()
        }
    }
}

pub(crate) fn nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// `sin(πx)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    let (s, r) = if r < 0.0 { (-1.0, -r) } else { (1.0, r) };
    let r = if r > 0.5 { 1.0 - r } else { r };
    s * (PI * r).sin()
}

fn stirling_series(v: f64) -> f64 {
    let inv = 1.0 / v;
    let inv2 = inv * inv;
    let mut acc = 0.0;
    for c in STIRLING.iter().rev() {
        acc = acc * inv2 + c;
    }
    acc * inv
}

/// Logarithm of `Π Γ(large_i + offset_i)^{power_i}`.
///
/// A pole in a denominator factor gives an exact zero; a pole in a numerator
/// factor is an error.
pub(crate) fn ln_gamma_product(factors: &[Factor]) -> Result<SignedLog> {
    let mut sign = 1.0;
    let mut acc = 0.0;
    let mut reduced: Vec<(f64, f64, f64)> = Vec::with_capacity(factors.len());
    for f in factors {
        let u = f.large + f.offset;
        if nonpositive_integer(u) {
            if f.power < 0.0 {
                return Ok(SignedLog { ln_abs: f64::NEG_INFINITY, sign: 0.0 });
            }
            return Err(Error::Pole(u));
        }
        let (mut large, mut offset, power) = if u < 0.0 {
            // Γ(u) = π / (sin(πu) Γ(1 - u))
            let s = sin_pi(u);
            if s < 0.0 {
                sign = -sign;
            }
            acc += f.power * (PI.ln() - s.abs().ln());
            (0.0, 1.0 - u, -f.power)
        } else {
            (f.large, f.offset, f.power)
        };
        let v = large + offset;
        if v < STIRLING_MIN {
            let shift = (STIRLING_MIN - v).ceil();
            let mut prod = 1.0;
            let mut j = 0.0;
            while j < shift {
                prod *= v + j;
                j += 1.0;
            }
            acc -= power * prod.ln();
            offset = v + shift;
            large = 0.0;
        }
        reduced.push((large, offset, power));
    }
    if reduced.is_empty() {
        return Ok(SignedLog { ln_abs: acc, sign });
    }
    let x = reduced.iter().map(|&(l, o, _)| l + o).fold(f64::MIN, f64::max);
    let ln_x = x.ln();
    let mut coef_large = 0.0;
    let mut coef_small = 0.0;
    let mut mid = 0.0;
    let mut series = 0.0;
    let mut power_sum = 0.0;
    for &(large, offset, power) in &reduced {
        let v = large + offset;
        let d = (large - x) + offset;
        coef_large += power * large;
        coef_small += power * (offset - 0.5);
        mid += power * ((large - 0.5) + offset) * (d / x).ln_1p();
        series += power * stirling_series(v);
        power_sum += power;
    }
    // Σ p (v - 1/2) ln v - Σ p v, with v - 1/2 = large + (offset - 1/2)
    let linear = -(coef_large + coef_small + 0.5 * power_sum);
    let ln_abs = (coef_large + coef_small) * ln_x + mid + linear + series + power_sum * LN_SQRT_2PI + acc;
    Ok(SignedLog { ln_abs, sign })
}

/// `ln|Γ(x)|` and the sign of `Γ(x)`.
pub fn ln_gamma(x: f64) -> Result<SignedLog> {
    ln_gamma_product(&[Factor::num(0.0, x)])
}

/// `Γ(x)`.
pub fn gamma(x: f64) -> Result<f64> {
    ln_gamma(x).map(SignedLog::value)
}

/// `1/Γ(x)`, which vanishes at the poles of `Γ`.
pub fn rgamma(x: f64) -> f64 {
    match ln_gamma_product(&[Factor::den(0.0, x)]) {
        Ok(s) => s.value(),
        Err(_) => 0.0,
    }
}

/// `Π Γ(a_i + k) / Π Γ(b_i + k)` evaluated in the log domain.
pub fn gamma_ratio(spec: &GammaRatioSpec, k: f64) -> Result<f64> {
    ln_gamma_ratio(spec, k).map(SignedLog::value)
}

/// Signed logarithm of [`gamma_ratio`].
pub fn ln_gamma_ratio(spec: &GammaRatioSpec, k: f64) -> Result<SignedLog> {
    for &o in spec.numerator_offsets.iter().chain(&spec.denominator_offsets) {
        if nonpositive_integer(o + k) {
            return Err(Error::Pole(o + k));
        }
    }
    let factors: Vec<Factor> = spec
        .numerator_offsets
        .iter()
        .map(|&o| Factor::num(k, o))
        .chain(spec.denominator_offsets.iter().map(|&o| Factor::den(k, o)))
        .collect();
    ln_gamma_product(&factors)
}

/// Pochhammer symbol `(a)_k = a (a+1) ... (a+k-1)`, exactly zero when the
/// product contains a zero factor.
pub fn pochhammer(a: f64, k: f64) -> Result<f64> {
    if k == 0.0 {
        return Ok(1.0);
    }
    if k < 0.0 || k != k.floor() {
        return gamma_ratio(&GammaRatioSpec::new(&[a], &[]), k).and_then(|r| Ok(r * rgamma_checked(a)?));
    }
    if nonpositive_integer(a) && k > -a {
        return Ok(0.0);
    }
    if k <= 32.0 {
        let mut p = 1.0;
        let mut j = 0.0;
        while j < k {
            p *= a + j;
            j += 1.0;
        }
        return Ok(p);
    }
    ln_gamma_product(&[Factor::num(k, a), Factor::den(0.0, a)]).map(SignedLog::value)
}

fn rgamma_checked(a: f64) -> Result<f64> {
    if nonpositive_integer(a) {
        return Err(Error::Pole(a));
    }
    Ok(rgamma(a))
}

/// Euler Beta function `B(a, b) = Γ(a)Γ(b)/Γ(a+b)`, `a, b > 0`.
pub fn beta(a: f64, b: f64) -> Result<f64> {
    ln_beta(a, b).map(f64::exp)
}

/// `ln B(a, b)` for `a, b > 0`.
pub fn ln_beta(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Domain(format!("Beta function needs positive arguments, got ({a}, {b})")));
    }
    let (big, small) = if a >= b { (a, b) } else { (b, a) };
    let s = ln_gamma_product(&[Factor::num(big, 0.0), Factor::num(0.0, small), Factor::den(big, small)])?;
    Ok(s.ln_abs)
}

/// Digamma function `ψ(x) = Γ'(x)/Γ(x)`.
pub fn digamma(x: f64) -> Result<f64> {
    if nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if x < 0.0 {
        // ψ(x) = ψ(1 - x) - π cot(πx)
        let cot = PI * sin_pi(x + 0.5) / sin_pi(x);
        return Ok(digamma(1.0 - x)? - cot);
    }
    let mut v = x;
    let mut acc = 0.0;
    while v < 12.0 {
        acc -= 1.0 / v;
        v += 1.0;
    }
    let inv2 = 1.0 / (v * v);
    // B_{2j}/(2j) for j = 1..=7
    const C: [f64; 7] =
        [1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0, 1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0];
    let mut s = 0.0;
    for c in C.iter().rev() {
        s = s * inv2 + c;
    }
    Ok(acc + v.ln() - 0.5 / v - s * inv2)
}
