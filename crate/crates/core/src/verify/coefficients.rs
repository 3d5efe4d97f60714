use super::report::{Bound, VerifyReport};
use super::VerifyContext;
use crate::coefficients::{a0_closed_form, asymptotic_prefactor, i_m_exact, CoefMode};
use crate::error::Result;
use crate::quadrature::{growth_fit, GrowthModel};
use crate::specfun::pochhammer;

const FIT_RANGE: (usize, usize) = (20, 400);
const COMPARE_AT: usize = 400;

/// Decay of the truncated expansion of `I_m`, agreement of exact and
/// asymptotic `c_m`, and the closed form of `A_0`.
pub fn check_coefficients(ctx: &VerifyContext) -> Result<VerifyReport> {
    let params = ctx.params();
    let table = &ctx.table;
    let (n, al) = (params.n as f64, params.alpha);
    let (lo, hi) = FIT_RANGE;
    let mut report = VerifyReport::new(
        "coefficients",
        params.into(),
        format!("m in [{lo}, {hi}], K = 1..3; c_m compared at m = {COMPARE_AT}"),
        0.5,
    );

    let scaled = (lo..=hi)
        .map(|m| {
            let i_m = if m <= table.m_max { table.i_exact[m] } else { i_m_exact(m, &params)? };
            Ok((m, i_m * asymptotic_prefactor(m as f64, &params)?))
        })
        .collect::<Result<Vec<_>>>()?;

    for order in 1..=3usize.min(table.order) {
        let mut samples = Vec::with_capacity(scaled.len());
        for &(m, value) in &scaled {
            let mut partial = 0.0;
            for (k, ak) in table.a.iter().take(order).enumerate() {
                partial += ak / pochhammer(m as f64 + al + n, k as f64)?;
            }
            let residual = (value - partial).abs();
            report.row(&format!("residual.K{order}"), m as f64, residual);
            samples.push((1.0 / m as f64, residual));
        }
        // A_k vanishes for k ≥ n/2 when n is even, so the expansion terminates
        let terminates = params.n % 2 == 0 && order >= params.n / 2;
        if terminates {
            let worst = samples.iter().map(|s| s.1).fold(0.0, f64::max);
            report.check(&format!("residual_max.K{order}"), worst, Bound::at_most(1e-11));
        } else {
            let fit = growth_fit(&samples, GrowthModel::Power)?;
            report.check(
                &format!("residual_slope.K{order}"),
                fit.fitted_exponent,
                Bound::absolute(-(order as f64), 0.5),
            );
            report.info(&format!("residual_r2.K{order}"), fit.r_squared);
        }
    }

    let exact = table.c_m(COMPARE_AT, CoefMode::Exact)?;
    let asym = table.c_m(COMPARE_AT, CoefMode::Asymptotic(3.min(table.order)))?;
    report.check("c_m_relative_gap", ((exact - asym) / exact).abs(), Bound::at_most(1e-5));

    let a0 = table.a[0];
    let closed = a0_closed_form(&params)?;
    report.check("a0_relative_gap", ((a0 - closed) / closed).abs(), Bound::at_most(1e-10));
    if params.n == 4 && table.a.len() > 2 {
        report.check("a2", table.a[2], Bound::absolute(0.0, 0.0));
    }
    report.info("c0", table.c_exact[0]);
    Ok(report)
}
