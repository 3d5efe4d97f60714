use std::f64::consts::PI;

use rayon::prelude::*;

use super::grids::{fit_against, max_of, min_of, on_axis, planar, random_points, rng, shell_radius, spread};
use super::report::{Bound, VerifyReport};
use super::VerifyContext;
use crate::error::Result;
use crate::geometry::{ahlfors_bracket, gradient_fd, FdScheme};
use crate::kernels::KernelSeries;
use crate::quadrature::GrowthModel;

const SHELL_SPREAD: f64 = 10.0;
const EXPONENT_TOL: f64 = 0.05;
const APERTURES: [f64; 4] = [0.25, 0.1, 0.05, 0.02];
/// Largest accepted ratio of rounding bound to value on the mixed grid.
const RESOLUTION: f64 = 1e-2;

/// Second points for a first point at shell gap `gap`: radii from the interior
/// and every shell, polar angles from the axis out to the antipode.
fn mixed_partners(n: usize, gap: f64, gaps: &[f64]) -> Vec<Vec<f64>> {
    let mut radii = vec![0.0, 0.5];
    radii.extend(gaps.iter().map(|&g| shell_radius(g)));
    let angles = [0.0, gap.sqrt(), 0.1, 0.5, PI / 2.0, PI];
    radii.iter().flat_map(|&rho| angles.iter().map(move |&th| planar(n, rho, th))).collect()
}

/// Per-shell supremum of `weight(x, y, K(x, y))` over the points of the mixed
/// grid where the series value is resolved, with the number of skipped points.
fn shell_sups<F>(engine: &KernelSeries, gaps: &[f64], weight: F) -> Result<(Vec<f64>, usize)>
where
    F: Fn(&[f64], &[f64], f64) -> f64 + Sync,
{
    let n = engine.params().n;
    let per_shell = gaps
        .par_iter()
        .map(|&gap| {
            let x = on_axis(n, shell_radius(gap));
            let mut sup: f64 = 0.0;
            let mut skipped = 0;
            for y in mixed_partners(n, gap, gaps) {
                let v = engine.eval(&x, &y)?;
                if v.resolved(RESOLUTION) {
                    sup = sup.max(weight(&x, &y, v.value));
                } else {
                    skipped += 1;
                }
            }
            Ok((sup, skipped))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((per_shell.iter().map(|s| s.0).collect(), per_shell.iter().map(|s| s.1).sum()))
}

fn diagonal(engine: &KernelSeries, gaps: &[f64]) -> Result<Vec<f64>> {
    let n = engine.params().n;
    gaps.par_iter()
        .map(|&gap| {
            let x = on_axis(n, shell_radius(gap));
            engine.eval(&x, &x).map(|v| v.value)
        })
        .collect()
}

/// Diagonal growth exponent `α + n` and shell stability of `|R_α| [x, y]^{α+n}`,
/// for the H-harmonic and the Euclidean kernel.
pub fn check_kernel_upper(ctx: &VerifyContext) -> Result<VerifyReport> {
    let params = ctx.params();
    let gaps = &ctx.config.shells;
    let exponent = params.alpha + params.n as f64;
    let expected = ctx.config.debug_exponent.unwrap_or(exponent);
    let mut report = VerifyReport::new(
        "kernel_upper",
        params.into(),
        format!("x = r e1 with 1 - r^2 in {gaps:?}; y over interior and shell radii, 6 polar angles"),
        EXPONENT_TOL,
    );
    for (label, engine) in [("bergman", &ctx.bergman), ("euclid", &ctx.euclid)] {
        let diag = diagonal(engine, gaps)?;
        for (&g, &v) in gaps.iter().zip(&diag) {
            report.row(&format!("{label}.diagonal"), g, v);
        }
        let fit = fit_against(gaps, &diag, GrowthModel::Power)?;
        let target = if label == "bergman" { expected } else { exponent };
        report.check(&format!("{label}.diagonal_exponent"), fit.fitted_exponent, Bound::relative(target, EXPONENT_TOL));
        report.info(&format!("{label}.diagonal_r2"), fit.r_squared);

        let (sups, skipped) = shell_sups(engine, gaps, |x, y, v| v.abs() * ahlfors_bracket(x, y).powf(exponent))?;
        report.info(&format!("{label}.unresolved_points"), skipped as f64);
        for (&g, &s) in gaps.iter().zip(&sups) {
            report.row(&format!("{label}.shell_sup"), g, s);
        }
        report.info(&format!("{label}.sup"), max_of(&sups));
        report.check(&format!("{label}.shell_spread"), spread(&sups), Bound::at_most(SHELL_SPREAD));
    }

    // compact subset |x|, |y| ≤ 0.5
    let n = params.n;
    let mut interior: f64 = 0.0;
    for &r in &[0.0, 0.25, 0.5] {
        for &rho in &[0.0, 0.25, 0.5] {
            for &th in &[0.0, PI / 3.0, PI] {
                let (x, y) = (on_axis(n, r), planar(n, rho, th));
                let v = ctx.bergman.eval(&x, &y)?.value;
                interior = interior.max(v.abs() * ahlfors_bracket(&x, &y).powf(exponent));
            }
        }
    }
    report.check("interior_sup", interior, Bound::at_most(f64::MAX));
    Ok(report)
}

struct ConeScan {
    aperture: f64,
    shell_mins: Vec<f64>,
    axis_min: f64,
}

fn cone_scan(ctx: &VerifyContext, aperture: f64) -> Result<ConeScan> {
    let params = ctx.params();
    let n = params.n;
    let exponent = params.alpha + n as f64;
    let gaps = &ctx.config.shells;
    let results = gaps
        .par_iter()
        .map(|&gap| {
            let r = shell_radius(gap);
            let x = on_axis(n, r);
            let mut shell_min = f64::INFINITY;
            let mut axis_min = f64::INFINITY;
            for &ygap in gaps {
                let y1 = shell_radius(ygap);
                for &frac in &[0.0, 0.5, 0.99] {
                    let mut y = on_axis(n, y1);
                    y[1] = frac * aperture * (1.0 - y1);
                    let v = ctx.bergman.eval(&x, &y)?.value;
                    let ratio = v * (1.0 - r * y1).powf(exponent);
                    shell_min = shell_min.min(ratio);
                    if frac == 0.0 {
                        axis_min = axis_min.min(ratio);
                    }
                }
            }
            Ok((shell_min, axis_min))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConeScan {
        aperture,
        shell_mins: results.iter().map(|r| r.0).collect(),
        axis_min: results.iter().map(|r| r.1).fold(f64::INFINITY, f64::min),
    })
}

fn cone_passes(scan: &ConeScan) -> bool {
    min_of(&scan.shell_mins) > 0.0 && spread(&scan.shell_mins) <= SHELL_SPREAD
}

/// Positive, shell-stable lower bound of `R_α(x, y)(1 - r y₁)^{α+n}` for
/// `x = r e₁` and `y` in the cone `|y - y₁e₁| < s(1 - y₁)`, with the aperture
/// `s` taken from a decreasing sweep.
pub fn check_kernel_lower(ctx: &VerifyContext) -> Result<VerifyReport> {
    let params = ctx.params();
    let gaps = &ctx.config.shells;
    let mut report = VerifyReport::new(
        "kernel_lower",
        params.into(),
        format!(
            "x = r e1, y = y1 e1 + f s (1 - y1) e2 with 1 - r^2, 1 - y1^2 in {gaps:?}, f in {{0, 0.5, 0.99}}, s in {APERTURES:?}"
        ),
        SHELL_SPREAD,
    );
    let mut chosen = None;
    for &s in &APERTURES {
        let scan = cone_scan(ctx, s)?;
        let ok = cone_passes(&scan);
        chosen = Some(scan);
        if ok {
            break;
        }
    }
    let scan = chosen.expect("aperture sweep is non-empty");
    for (&g, &m) in gaps.iter().zip(&scan.shell_mins) {
        report.row("shell_min", g, m);
    }
    report.info("aperture", scan.aperture);
    report.info("axis_min", scan.axis_min);
    report.check("min_ratio", min_of(&scan.shell_mins), Bound::at_least(f64::MIN_POSITIVE));
    report.check("shell_spread", spread(&scan.shell_mins), Bound::at_most(SHELL_SPREAD));
    let origin = ctx.bergman.eval(&vec![0.0; params.n], &on_axis(params.n, shell_radius(gaps[0])))?.value;
    report.check("origin_ratio", origin, Bound::absolute(1.0, 1e-12));
    Ok(report)
}

/// Series gradient against finite differences on random pairs, and shell
/// stability of `max_i |∂R_α/∂x_i| [x, y]^{α+n+1}`.
pub fn check_gradient(ctx: &VerifyContext) -> Result<VerifyReport> {
    let params = ctx.params();
    let n = params.n;
    let gaps = &ctx.config.shells;
    let exponent = params.alpha + n as f64 + 1.0;
    let mut report = VerifyReport::new(
        "gradient",
        params.into(),
        format!("100 random pairs in |x|, |y| < 0.9 (seed {}); shells {gaps:?}", ctx.config.seed),
        1e-6,
    );
    let mut gen = rng(ctx.config.seed);
    let xs = random_points(n, 100, 0.9, &mut gen);
    let ys = random_points(n, 100, 0.9, &mut gen);
    let scheme = FdScheme::default().richardson();
    let errors = xs
        .par_iter()
        .zip(&ys)
        .map(|(x, y)| {
            let series = ctx.bergman.gradient(x, y)?;
            let f = |p: &[f64]| ctx.bergman.eval(p, y).map(|v| v.value);
            let fd = gradient_fd(&f, x, scheme)?;
            let scale = series.iter().map(|g| g.value.abs()).fold(1.0, f64::max);
            Ok(series.iter().zip(&fd).map(|(g, d)| (g.value - d).abs()).fold(0.0, f64::max) / scale)
        })
        .collect::<Result<Vec<f64>>>()?;
    report.check("fd_max_error", max_of(&errors), Bound::at_most(1e-6));

    let per_shell = gaps
        .par_iter()
        .map(|&gap| {
            let x = on_axis(n, shell_radius(gap));
            let mut sup: f64 = 0.0;
            let mut skipped = 0;
            for y in mixed_partners(n, gap, gaps) {
                let g = ctx.bergman.gradient(&x, &y)?;
                let big = g.iter().map(|c| c.value.abs()).fold(0.0, f64::max);
                if g[0].rounding_bound <= RESOLUTION * big {
                    sup = sup.max(big * ahlfors_bracket(&x, &y).powf(exponent));
                } else {
                    skipped += 1;
                }
            }
            Ok((sup, skipped))
        })
        .collect::<Result<Vec<_>>>()?;
    let sups: Vec<f64> = per_shell.iter().map(|s| s.0).collect();
    report.info("unresolved_points", per_shell.iter().map(|s| s.1).sum::<usize>() as f64);
    for (&g, &s) in gaps.iter().zip(&sups) {
        report.row("shell_sup", g, s);
    }
    report.info("sup", max_of(&sups));
    report.check("shell_spread", spread(&sups), Bound::at_most(SHELL_SPREAD));
    Ok(report)
}

/// `K(x, y) ≥ -tail_bound` on the mixed grid, shell stability of
/// `|K| [x, y]^{n-1}` and the diagonal exponent `n - 1`.
pub fn check_hardy(ctx: &VerifyContext) -> Result<VerifyReport> {
    let params = ctx.params();
    let n = params.n;
    let gaps = &ctx.config.shells;
    let exponent = n as f64 - 1.0;
    let mut report = VerifyReport::new(
        "hardy",
        params.into(),
        format!("x = r e1 with 1 - r^2 in {gaps:?}; y over interior and shell radii, 6 polar angles"),
        EXPONENT_TOL,
    );
    let margins = gaps
        .par_iter()
        .map(|&gap| {
            let x = on_axis(n, shell_radius(gap));
            let mut worst = f64::INFINITY;
            for y in mixed_partners(n, gap, gaps) {
                let v = ctx.hardy.eval(&x, &y)?;
                worst = worst.min(v.value + v.tail_bound);
            }
            Ok(worst)
        })
        .collect::<Result<Vec<f64>>>()?;
    report.check("min_value_plus_tail", min_of(&margins), Bound::at_least(0.0));

    let (sups, skipped) = shell_sups(&ctx.hardy, gaps, |x, y, v| v.abs() * ahlfors_bracket(x, y).powf(exponent))?;
    report.info("unresolved_points", skipped as f64);
    for (&g, &s) in gaps.iter().zip(&sups) {
        report.row("shell_sup", g, s);
    }
    report.check("shell_spread", spread(&sups), Bound::at_most(SHELL_SPREAD));

    let diag = diagonal(&ctx.hardy, gaps)?;
    for (&g, &v) in gaps.iter().zip(&diag) {
        report.row("diagonal", g, v);
    }
    let fit = fit_against(gaps, &diag, GrowthModel::Power)?;
    report.check("diagonal_exponent", fit.fitted_exponent, Bound::relative(exponent, EXPONENT_TOL));
    report.info("diagonal_r2", fit.r_squared);
    Ok(report)
}
