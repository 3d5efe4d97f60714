//! Bergman projections `P_β f(x) = ∫ R_β(x, y) f(y) dν_β(y)`.

use std::cell::RefCell;

use crate::coefficients::{s_sequence, CoefTable};
use crate::error::{Error, Result};
use crate::geometry::{dot, euclidean_norm};
use crate::kernels::{zonal_scale, KernelKind, KernelSeries, KernelSlice};
use crate::quadrature::{ball_integral, gauss_jacobi_rule, BallIntegrand, BallOptions, GradedRuleBuilder};
use crate::specfun::{beta, gegenbauer_at_one, gegenbauer_sequence, ln_beta, GegenbauerSum};

fn require_bergman(engine: &KernelSeries) -> Result<()> {
    if engine.kind() != KernelKind::Bergman {
        return Err(Error::InvalidParameter("projection needs a Bergman kernel series".into()));
    }
    Ok(())
}

/// `P_β f(x)` for `n = 3` by direct ball quadrature; `β` is the weight of `engine`.
pub fn bergman_project(f: &dyn Fn(&[f64]) -> Result<f64>, engine: &KernelSeries, x: &[f64], tol: f64) -> Result<f64> {
    require_bergman(engine)?;
    let r = euclidean_norm(x);
    let dir: Vec<f64> = if r > 0.0 { x.iter().map(|c| c / r).collect() } else { vec![0.0; x.len()] };
    let cache: RefCell<Option<(f64, KernelSlice<'_>)>> = RefCell::new(None);
    let integrand = |y: &[f64]| -> Result<f64> {
        let rho = euclidean_norm(y);
        let mut slot = cache.borrow_mut();
        let stale = slot.as_ref().map_or(true, |(cached, _)| (cached - rho).abs() > 1e-13);
        if stale {
            *slot = Some((rho, engine.slice(r, rho)?));
        }
        let t = if rho > 0.0 { (dot(&dir, y) / rho).clamp(-1.0, 1.0) } else { 0.0 };
        let kernel = slot.as_ref().expect("slice cached above").1.eval(t).value;
        Ok(kernel * f(y)?)
    };
    let opts = BallOptions::new(engine.params().alpha, tol);
    Ok(ball_integral(BallIntegrand::Field(&integrand), x.len(), &opts)?.value)
}

/// `P_β f(r e₁)` for `f` zonal about `e₁`, given as `g(|y|, ⟨y/|y|, e₁⟩)`.
pub fn bergman_project_axial(
    g: &(dyn Fn(f64, f64) -> Result<f64> + Sync),
    engine: &KernelSeries,
    r: f64,
    tol: f64,
) -> Result<f64> {
    require_bergman(engine)?;
    let integrand = |rho: f64, ts: &[f64]| -> Result<Vec<f64>> {
        let slice = engine.slice(r, rho)?;
        ts.iter().map(|&t| Ok(slice.eval(t).value * g(rho, t)?)).collect()
    };
    let opts = BallOptions::new(engine.params().alpha, tol).focus(r);
    Ok(ball_integral(BallIntegrand::Zonal(&integrand), engine.params().n, &opts)?.value)
}

/// Piecewise-constant function of `t ∈ [-1, 1]`: `values[k]` on `(breaks[k-1], breaks[k])`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZonalProfile {
    pub breaks: Vec<f64>,
    pub values: Vec<f64>,
}

impl ZonalProfile {
    pub fn constant(value: f64) -> Self {
        Self { breaks: Vec::new(), values: vec![value] }
    }

    pub fn new(breaks: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.len() != breaks.len() + 1
            || breaks.windows(2).any(|w| !(w[0] < w[1]))
            || breaks.iter().any(|b| !(-1.0 < *b && *b < 1.0))
        {
            return Err(Error::InvalidParameter("profile breaks must increase inside (-1, 1), one more value".into()));
        }
        Ok(Self { breaks, values })
    }

    /// `sign h(t)` (`+1` where `h = 0`), with sign changes located by bisection
    /// between `samples` equispaced cosines.
    pub fn sign_of(h: &dyn Fn(f64) -> Result<f64>, samples: usize) -> Result<Self> {
        let sign = |v: f64| if v < 0.0 { -1.0 } else { 1.0 };
        let grid: Vec<f64> = (0..=samples).map(|k| -1.0 + 2.0 * k as f64 / samples as f64).collect();
        let vals = grid.iter().map(|&t| h(t)).collect::<Result<Vec<_>>>()?;
        let mut breaks = Vec::new();
        let mut values = vec![sign(vals[0])];
        for k in 0..samples {
            if sign(vals[k]) != sign(vals[k + 1]) {
                let (mut lo, mut hi) = (grid[k], grid[k + 1]);
                let s_lo = sign(vals[k]);
                while hi - lo > 1e-13 {
                    let mid = 0.5 * (lo + hi);
                    if sign(h(mid)?) == s_lo {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                breaks.push(0.5 * (lo + hi));
                values.push(sign(vals[k + 1]));
            }
        }
        Self::new(breaks, values)
    }

    pub fn sup(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Normalized zonal measure `c (1-t²)^{λ-1/2} dt` on `[-1, 1]`, `λ = n/2 - 1`.
struct ZonalMeasure {
    lam: f64,
    norm: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl ZonalMeasure {
    fn new(n: usize) -> Result<Self> {
        let lam = n as f64 / 2.0 - 1.0;
        let rule = gauss_jacobi_rule(24, lam - 0.5, 0.0)?;
        Ok(Self { lam, norm: 1.0 / beta(0.5, lam + 0.5)?, nodes: rule.nodes, weights: rule.weights })
    }

    /// Mass of `{t > a}`.
    fn tail(&self, a: f64) -> f64 {
        if a < 0.0 {
            return 1.0 - self.tail(-a);
        }
        // t = 1 - (1-a)v, 1 - t² = (1-a)v(2 - (1-a)v)
        let d = 1.0 - a;
        let e = self.lam - 0.5;
        let inner: f64 = self.nodes.iter().zip(&self.weights).map(|(&v, &w)| w * (2.0 - d * v).powf(e)).sum();
        self.norm * d.powf(self.lam + 0.5) * inner
    }

    /// `λ_m = ∫ g(t) C_m^{(λ)}(t)/C_m^{(λ)}(1) dμ(t)` for `m = 0..=m_top`, using
    /// `∫ (1-t²)^{λ-1/2} C_m^{(λ)} dt = -(2λ/(m(m+2λ))) (1-t²)^{λ+1/2} C_{m-1}^{(λ+1)}(t)`.
    fn funk_hecke(&self, profile: &ZonalProfile, at_one: &[f64], m_top: usize) -> Vec<f64> {
        let lam = self.lam;
        let mut out = vec![0.0; m_top + 1];
        let mut edges = vec![-1.0];
        edges.extend(&profile.breaks);
        edges.push(1.0);
        let masses: Vec<f64> = edges.iter().map(|&a| self.tail(a)).collect();
        out[0] = profile.values.iter().enumerate().map(|(k, v)| v * (masses[k] - masses[k + 1])).sum();
        for (j, &t) in profile.breaks.iter().enumerate() {
            let jump = profile.values[j] - profile.values[j + 1];
            if jump == 0.0 || m_top == 0 {
                continue;
            }
            let up = gegenbauer_sequence(m_top - 1, lam + 1.0, t);
            let front = (1.0 - t * t).powf(lam + 0.5);
            for m in 1..=m_top {
                let mf = m as f64;
                let antideriv = -(2.0 * lam / (mf * (mf + 2.0 * lam))) * front * up[m - 1];
                out[m] += self.norm * jump * antideriv / at_one[m];
            }
        }
        out
    }
}

/// `P_α f` for `f(y) = g(|y|, ⟨y/|y|, e₁⟩)` with `g(ρ, ·)` piecewise constant,
/// as the series `Σ_m c_m κ_m W_m S_m(r) r^m C_m^{(λ)}(x₁/r)` with
/// `W_m = ∫ ρ^m S_m(ρ) λ_m(ρ) dμ_α(ρ)`.
#[derive(Debug, Clone)]
pub struct ZonalProjection {
    params: crate::geometry::Params,
    coef: Vec<f64>,
    sum: GegenbauerSum,
    tail: f64,
}

impl ZonalProjection {
    /// Series accurate to `tol` (relative to its majorant) for `|x| ≤ r_max`.
    pub fn new(
        table: &CoefTable,
        profile: &(dyn Fn(f64) -> Result<ZonalProfile> + Sync),
        r_max: f64,
        tol: f64,
        cap: usize,
    ) -> Result<Self> {
        let params = table.params;
        let n = params.n;
        let h = params.half_n();
        let al = params.alpha;
        let lam = h - 1.0;
        // majorant with |λ_m| ≤ 1, S_m ≤ S_m(0) and ∫ρ^m dμ_α = B(n/2 + m/2, α+1)/B(n/2, α+1)
        let growth = 2.0 * n as f64 - 4.0;
        let base = ln_beta(h, al + 1.0)?;
        let mut m_top = None;
        let mut mass = 0.0;
        let mut origin = 1.0;
        let mut at_one = 1.0;
        let coefs = table.sequence(cap + 2)?;
        let mut power = 1.0;
        let weight_at = |m: usize, origin: f64, at_one: f64, power: f64| -> Result<f64> {
            let moment = (ln_beta(h + m as f64 / 2.0, al + 1.0)? - base).exp();
            Ok(coefs[m] * zonal_scale(m, n) * origin * origin * at_one * moment * power)
        };
        let mut tail = 0.0;
        for m in 0..cap {
            mass += weight_at(m, origin, at_one, power)?;
            let k = m as f64;
            let next_origin = origin * (k + n as f64 - 1.0) / (k + h);
            let next_at_one = at_one * (k + 2.0 * lam) / (k + 1.0);
            let next = weight_at(m + 1, next_origin, next_at_one, power * r_max)?;
            origin = next_origin;
            at_one = next_at_one;
            power *= r_max;
            let qbar = r_max * ((growth + 1.0) / (k + 1.0)).exp();
            if m >= 1 && qbar < 1.0 {
                tail = next / (1.0 - qbar);
                if tail <= tol * mass.max(1.0) {
                    m_top = Some(m);
                    break;
                }
            }
            if r_max == 0.0 {
                m_top = Some(0);
                break;
            }
        }
        let m_top = m_top.ok_or(Error::Truncation { cap, product: r_max })?;

        let measure = ZonalMeasure::new(n)?;
        let at_one = gegenbauer_at_one(m_top, lam);
        let floor = (1.0 / m_top.max(1) as f64).min(0.05);
        let rule = GradedRuleBuilder::new(16, h - 1.0, al)?.build(floor, 1);
        let norm = 1.0 / beta(h, al + 1.0)?;
        let mut w = vec![0.0; m_top + 1];
        let mut sup: f64 = 0.0;
        for (&s, &weight) in rule.nodes.iter().zip(&rule.weights) {
            let rho = s.sqrt();
            let prof = profile(rho)?;
            sup = sup.max(prof.sup());
            let lambdas = measure.funk_hecke(&prof, &at_one, m_top);
            let sr = s_sequence(rho, m_top, &params)?;
            let mut pw = 1.0;
            for m in 0..=m_top {
                w[m] += norm * weight * pw * sr[m] * lambdas[m];
                pw *= rho;
            }
        }
        let coef = (0..=m_top).map(|m| coefs[m] * zonal_scale(m, n) * w[m]).collect();
        Ok(Self { params, coef, sum: GegenbauerSum::new(lam, m_top + 1), tail: tail * sup })
    }

    pub fn terms(&self) -> usize {
        self.coef.len()
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail
    }

    /// `P_α f(x)`.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        let r = euclidean_norm(x);
        if !(r < 1.0) || x.len() != self.params.n {
            return Err(Error::Domain(format!(
                "projection point must lie in the open ball of dimension {}",
                self.params.n
            )));
        }
        let t = if r > 0.0 { (x[0] / r).clamp(-1.0, 1.0) } else { 1.0 };
        let m_top = self.coef.len() - 1;
        let sr = s_sequence(r, m_top, &self.params)?;
        let mut pw = 1.0;
        let a: Vec<f64> = (0..=m_top)
            .map(|m| {
                let v = self.coef[m] * sr[m] * pw;
                pw *= r;
                v
            })
            .collect();
        Ok(self.sum.eval(&a, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Params;

    fn table(n: usize, alpha: f64) -> CoefTable {
        CoefTable::with_defaults(Params::new(n, alpha).unwrap()).unwrap()
    }

    #[test]
    fn constants_project_to_themselves() {
        for (n, alpha) in [(3, 0.0), (4, 0.5)] {
            let t = table(n, alpha);
            let one = |_: f64| Ok(ZonalProfile::constant(1.0));
            let proj = ZonalProjection::new(&t, &one, 0.9, 1e-10, 100_000).unwrap();
            for r in [0.0, 0.4, 0.9] {
                let mut x = vec![0.0; n];
                x[0] = r * 0.6;
                x[1] = r * 0.8;
                assert!((proj.eval(&x).unwrap() - 1.0).abs() < 1e-9, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn series_projection_matches_quadrature() {
        for (n, alpha) in [(3, 0.0), (4, 0.5)] {
            let t = table(n, alpha);
            let engine = KernelSeries::bergman(&t, 1e-12, 100_000).unwrap();
            let sign = |_: f64| ZonalProfile::new(vec![0.0], vec![-1.0, 1.0]);
            let proj = ZonalProjection::new(&t, &sign, 0.5, 1e-12, 100_000).unwrap();
            let g = |_: f64, c: f64| Ok(if c < 0.0 { -1.0 } else { 1.0 });
            let mut x = vec![0.0; n];
            x[0] = 0.5;
            let series = proj.eval(&x).unwrap();
            // t = 0 is a panel edge of the quadrature
            let direct = bergman_project_axial(&g, &engine, 0.5, 1e-6).unwrap();
            assert!((series - direct).abs() < 1e-6, "n={n}: {series} vs {direct}");
        }
    }

    #[test]
    fn sign_profile_locates_changes() {
        let h = |t: f64| Ok((t - 0.3) * (t + 0.5));
        let p = ZonalProfile::sign_of(&h, 50).unwrap();
        assert_eq!(p.values, vec![1.0, -1.0, 1.0]);
        assert!((p.breaks[0] + 0.5).abs() < 1e-12 && (p.breaks[1] - 0.3).abs() < 1e-12);
        assert!(ZonalProfile::new(vec![0.5, 0.1], vec![1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn field_projection_reproduces_harmonics() {
        let t = table(3, 0.0);
        let engine = KernelSeries::bergman(&t, 1e-12, 100_000).unwrap();
        let s1 = |r: f64| crate::coefficients::s_factor(1, r, &t.params).unwrap();
        let f = |y: &[f64]| Ok(s1(euclidean_norm(y)) * y[1]);
        let x = [0.2, 0.3, -0.1];
        let got = bergman_project(&f, &engine, &x, 1e-9).unwrap();
        assert!((got - f(&x).unwrap()).abs() < 1e-8);
    }
}
