use rayon::prelude::*;

use super::grids::{fit_against, max_of, min_of, shell_radius, spread};
use super::project::{bergman_project, bergman_project_axial};
use super::report::{Bound, ReportParams, VerifyReport};
use super::VerifyContext;
use crate::coefficients::s_factor;
use crate::error::{Error, Result};
use crate::kernels::KernelSeries;
use crate::quadrature::{
    ball_integral, sphere_integral_focused, BallIntegrand, BallOptions, GrowthModel, SphereIntegrand,
};
use crate::specfun::gegenbauer;

const GROWTH_QUAD_TOL: f64 = 1e-4;
const SHELL_SPREAD: f64 = 10.0;

/// `∫_B |K(r e₁, y)|^p (1-|y|²)^β dν(y)`, normalized by `ν_β(B) = 1`.
fn kernel_power_integral(engine: &KernelSeries, r: f64, p: f64, beta: f64) -> Result<f64> {
    let integrand = |rho: f64, ts: &[f64]| -> Result<Vec<f64>> {
        let slice = engine.slice(r, rho)?;
        Ok(ts.iter().map(|&t| slice.eval(t).value.abs().powf(p)).collect())
    };
    let opts = BallOptions::new(beta, GROWTH_QUAD_TOL).focus(r);
    Ok(ball_integral(BallIntegrand::Zonal(&integrand), engine.params().n, &opts)?.value)
}

/// `∫_B (1-|y|²)^b / [r e₁, y]^s dν(y)`, normalized by `ν_b(B) = 1`.
fn bracket_integral(n: usize, r: f64, b: f64, s: f64) -> Result<f64> {
    let integrand = |rho: f64, ts: &[f64]| -> Result<Vec<f64>> {
        Ok(ts.iter().map(|&t| (1.0 - 2.0 * r * rho * t + r * r * rho * rho).powf(-s / 2.0)).collect())
    };
    let opts = BallOptions::new(b, GROWTH_QUAD_TOL).focus(r);
    Ok(ball_integral(BallIntegrand::Zonal(&integrand), n, &opts)?.value)
}

fn shell_values(gaps: &[f64], f: impl Fn(f64) -> Result<f64> + Sync) -> Result<Vec<f64>> {
    gaps.par_iter().map(|&g| f(shell_radius(g))).collect()
}

/// Growth of `J(x) = ∫ |R_α(x, y)|^p (1-|y|²)^β dν(y)` as `x → ∂B`:
/// power `c = p(α+n) - (β+n)` for `c > 0`, logarithmic for `c = 0`, bounded for `c < 0`.
pub fn check_integral_growth(ctx: &VerifyContext, p: f64, beta: f64) -> Result<VerifyReport> {
    if !(p > 0.0) || !(beta > -1.0) {
        return Err(Error::InvalidParameter(format!("need p > 0 and beta > -1, got p = {p}, beta = {beta}")));
    }
    let params = ctx.params();
    let gaps = &ctx.config.shells;
    let c = p * (params.alpha + params.n as f64) - (beta + params.n as f64);
    let values = shell_values(gaps, |r| kernel_power_integral(&ctx.bergman, r, p, beta))?;
    let mut report = VerifyReport::new(
        "integral_growth",
        ReportParams { beta: Some(beta), p: Some(p), ..params.into() },
        format!("x = r e1 with 1 - r^2 in {gaps:?}; quadrature tolerance {GROWTH_QUAD_TOL:e}"),
        0.05,
    );
    for (&g, &v) in gaps.iter().zip(&values) {
        report.row("integral", g, v);
    }
    report.info("c", c);
    classify_growth(&mut report, gaps, &values, c)?;
    Ok(report)
}

fn classify_growth(report: &mut VerifyReport, gaps: &[f64], values: &[f64], c: f64) -> Result<()> {
    if c.abs() < 1e-12 {
        let fit = fit_against(gaps, values, GrowthModel::Log)?;
        report.check("log_r2", fit.r_squared, Bound::at_least(0.99));
        report.check("log_slope", fit.fitted_exponent, Bound::at_least(f64::MIN_POSITIVE));
    } else if c > 0.0 {
        let fit = fit_against(gaps, values, GrowthModel::Power)?;
        report.check("exponent", fit.fitted_exponent, Bound::relative(c, 0.05));
        report.info("r2", fit.r_squared);
    } else {
        report.check("bounded_spread", spread(values), Bound::at_most(2.0));
    }
    Ok(())
}

/// `P_α^* f_{x₀}(x₀) = ∫ |R_α(x₀, y)| dν_α(y)` for the sign field
/// `f_{x₀} = sign R_α(x₀, ·)` grows logarithmically as `x₀ → ∂B`.
pub fn check_extremal(ctx: &VerifyContext) -> Result<VerifyReport> {
    let params = ctx.params();
    let gaps = &ctx.config.shells;
    let engine = &ctx.bergman;
    let values = shell_values(gaps, |r| {
        // the sign field is evaluated from the same slice as the kernel
        let integrand = |rho: f64, ts: &[f64]| -> Result<Vec<f64>> {
            let slice = engine.slice(r, rho)?;
            Ok(ts
                .iter()
                .map(|&t| {
                    let v = slice.eval(t).value;
                    v * if v < 0.0 { -1.0 } else { 1.0 }
                })
                .collect())
        };
        let opts = BallOptions::new(params.alpha, GROWTH_QUAD_TOL).focus(r);
        Ok(ball_integral(BallIntegrand::Zonal(&integrand), params.n, &opts)?.value)
    })?;
    let mut report = VerifyReport::new(
        "extremal",
        ReportParams { beta: Some(params.alpha), p: Some(1.0), ..params.into() },
        format!("x0 = r e1 with 1 - r^2 in {gaps:?}; f = sign R(x0, .)"),
        0.99,
    );
    for (&g, &v) in gaps.iter().zip(&values) {
        report.row("projection_at_x0", g, v);
    }
    classify_growth(&mut report, gaps, &values, 0.0)?;
    report.info("growth_ratio", values[values.len() - 1] / values[0]);
    Ok(report)
}

/// Schur test functions `h(x) = (1-|x|²)^{-(α+1)/(pq)}`: both test inequalities
/// hold with shell-stable ratios when `α + 1 < p(β + 1)`.
pub fn check_schur(ctx: &VerifyContext, p: f64, beta: f64) -> Result<VerifyReport> {
    let params = ctx.params();
    let (n, al) = (params.n, params.alpha);
    let nf = n as f64;
    if !(p > 1.0) || !(beta > -1.0) {
        return Err(Error::InvalidParameter(format!("need p > 1 and beta > -1, got p = {p}, beta = {beta}")));
    }
    if !(al + 1.0 < p * (beta + 1.0)) {
        return Err(Error::Condition(format!(
            "alpha + 1 < p (beta + 1) fails for alpha = {al}, p = {p}, beta = {beta}"
        )));
    }
    let q = p / (p - 1.0);
    let gaps = &ctx.config.shells;
    let b1 = beta - (al + 1.0) / p;
    let b2 = al - (al + 1.0) / q;
    // h1: ∫ (1-|y|²)^β h^q(y) / [x,y]^{β+n} dν(y) ≲ h^q(x)
    let first =
        shell_values(gaps, |r| Ok(bracket_integral(n, r, b1, beta + nf)? * (1.0 - r * r).powf((al + 1.0) / p)))?;
    // h2: (1-|y|²)^{β-α} ∫ (1-|x|²)^α h^p(x) / [x,y]^{β+n} dν(x) ≲ h^p(y)
    let second = shell_values(gaps, |r| {
        Ok(bracket_integral(n, r, b2, beta + nf)? * (1.0 - r * r).powf(beta - al + (al + 1.0) / q))
    })?;
    let mut report = VerifyReport::new(
        "schur",
        ReportParams { beta: Some(beta), p: Some(p), ..params.into() },
        format!("radial points r e1 with 1 - r^2 in {gaps:?}"),
        SHELL_SPREAD,
    );
    for (&g, (&a, &b)) in gaps.iter().zip(first.iter().zip(&second)) {
        report.row("h1_ratio", g, a);
        report.row("h2_ratio", g, b);
    }
    report.info("h1_max", max_of(&first));
    report.info("h2_max", max_of(&second));
    report.check("h1_spread", spread(&first), Bound::at_most(SHELL_SPREAD));
    report.check("h2_spread", spread(&second), Bound::at_most(SHELL_SPREAD));
    Ok(report)
}

/// Sphere means of `R_α(x, ·)` equal `R_α(x, 0) = 1`, and weighted ball
/// integrals of `R_α(x, ·)` do not depend on `x`.
pub fn check_mean_value(ctx: &VerifyContext) -> Result<VerifyReport> {
    let params = ctx.params();
    let engine = &ctx.bergman;
    let delta = 1.5;
    let mut report = VerifyReport::new(
        "mean_value",
        params.into(),
        format!("sphere means at |x| in {{0, 0.5, 0.8}}, radius in {{0.3, 0.7, 0.9}}; delta = {delta} at |x| in {{0, 0.3, 0.6}}"),
        1e-8,
    );
    let mut worst: f64 = 0.0;
    for &r in &[0.0, 0.5, 0.8] {
        for &rho in &[0.3, 0.7, 0.9] {
            let slice = engine.slice(r, rho)?;
            let g = |t: f64| Ok(slice.eval(t).value);
            let mean = sphere_integral_focused(SphereIntegrand::Zonal(&g), params.n, 1e-12, r * rho)?.value;
            report.row("sphere_mean", rho, mean);
            worst = worst.max((mean - 1.0).abs());
        }
    }
    report.check("sphere_mean_error", worst, Bound::at_most(1e-8));

    let weighted = [0.0, 0.3, 0.6]
        .iter()
        .map(|&r| {
            let integrand = |rho: f64, ts: &[f64]| -> Result<Vec<f64>> {
                let slice = engine.slice(r, rho)?;
                Ok(ts.iter().map(|&t| slice.eval(t).value).collect())
            };
            let opts = BallOptions::new(delta, 1e-11).focus(r);
            Ok(ball_integral(BallIntegrand::Zonal(&integrand), params.n, &opts)?.value)
        })
        .collect::<Result<Vec<f64>>>()?;
    for (&r, &v) in [0.0, 0.3, 0.6].iter().zip(&weighted) {
        report.row("weighted_integral", r, v);
    }
    report.check("weighted_spread", max_of(&weighted) - min_of(&weighted), Bound::at_most(1e-7));
    Ok(report)
}

/// `∫ R_α(x, y) f(y) dν_α(y) = f(x)` for `f = S_m(|y|) p_m(y)`, `m ≤ 2`.
pub fn check_reproducing(ctx: &VerifyContext) -> Result<VerifyReport> {
    let params = ctx.params();
    let n = params.n;
    let engine = &ctx.bergman;
    let tol = 1e-8;
    let mut worst: f64 = 0.0;
    let grid_spec;
    let mut rows = Vec::new();
    if n == 3 {
        grid_spec = "p_0 = 1, p_1 = y1, p_2 = y1 y2 at probes (0.4, 0.1, 0), (0.3, 0.2, -0.4), (-0.25, 0.35, 0.3)";
        let probes = [[0.4, 0.1, 0.0], [0.3, 0.2, -0.4], [-0.25, 0.35, 0.3]];
        let harmonics: [fn(&[f64]) -> f64; 3] = [|_| 1.0, |y| y[0], |y| y[0] * y[1]];
        for (m, p_m) in harmonics.iter().enumerate() {
            let f = |y: &[f64]| Ok(s_factor(m, crate::geometry::euclidean_norm(y), &params)? * p_m(y));
            for probe in &probes {
                let got = bergman_project(&f, engine, probe, tol)?;
                let want = f(probe)?;
                let err = ((got - want) / want).abs();
                rows.push((m as f64, err));
                worst = worst.max(err);
            }
        }
    } else {
        grid_spec = "p_m = |y|^m C_m(y1/|y|), m = 0..2, at r e1 with r in {0.3, 0.6}";
        let lam = params.half_n() - 1.0;
        for m in 0..=2usize {
            let g = |rho: f64, t: f64| -> Result<f64> {
                Ok(s_factor(m, rho, &params)? * rho.powi(m as i32) * gegenbauer(m, lam, t)?.value)
            };
            for &r in &[0.3, 0.6] {
                let got = bergman_project_axial(&g, engine, r, tol)?;
                let want = g(r, 1.0)?;
                let err = ((got - want) / want).abs();
                rows.push((m as f64, err));
                worst = worst.max(err);
            }
        }
    }
    let mut report = VerifyReport::new("reproducing", params.into(), grid_spec, 1e-6);
    for (m, err) in rows {
        report.row("relative_error", m, err);
    }
    report.check("max_relative_error", worst, Bound::at_most(1e-6));
    Ok(report)
}
