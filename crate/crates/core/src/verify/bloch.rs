use std::f64::consts::PI;

use rayon::prelude::*;

use super::grids::{max_of, planar, shell_radius, spread};
use super::project::{ZonalProfile, ZonalProjection};
use super::report::{Bound, VerifyReport};
use super::{VerifyContext, VERIFY_CAP};
use crate::error::Result;
use crate::geometry::{invariant_gradient_fd, FdScheme};

const SHELL_SPREAD: f64 = 10.0;
const EXTREMAL_CENTER: f64 = 0.9;
const ANGLES: [f64; 5] = [0.0, PI / 4.0, PI / 2.0 - 0.1, PI / 2.0, 3.0 * PI / 4.0];

/// Per-shell sup of `(1-|x|²)|∇ P_α f(x)|` over the polar angles and the jump
/// angles of the profile on that shell.
fn seminorm_by_shell(
    ctx: &VerifyContext,
    projection: &ZonalProjection,
    profile: &(dyn Fn(f64) -> Result<ZonalProfile> + Sync),
) -> Result<Vec<f64>> {
    let n = ctx.params().n;
    ctx.config
        .shells
        .par_iter()
        .map(|&gap| {
            let r = shell_radius(gap);
            let scheme = FdScheme::new(0.1 * (1.0 - r)).richardson();
            let f = |x: &[f64]| projection.eval(x);
            let mut angles = ANGLES.to_vec();
            angles.extend(profile(r)?.breaks.iter().map(|t| t.acos()));
            let mut sup: f64 = 0.0;
            for &theta in &angles {
                sup = sup.max(invariant_gradient_fd(&f, &planar(n, r, theta), scheme)?);
            }
            Ok(sup)
        })
        .collect()
}

/// `(1-|x|²)|∇ P_α f(x)| ≲ ‖f‖_∞` for `f ∈ {1, sign y₁, sign R_α(x₀, ·)}`:
/// zero for constants, shell-stable and of comparable size for the others.
pub fn check_bloch(ctx: &VerifyContext) -> Result<VerifyReport> {
    let params = ctx.params();
    let gaps = &ctx.config.shells;
    let r_max = gaps.iter().map(|&g| shell_radius(g)).fold(0.0, f64::max);
    let tol = 1e-10;
    let engine = &ctx.bergman;
    let mut report = VerifyReport::new(
        "bloch",
        params.into(),
        format!(
            "x = r (cos t, sin t, 0, ...) with 1 - r^2 in {gaps:?}, t in {{0, pi/4, pi/2 - 0.1, pi/2, 3pi/4}} and the jump angles of f; x0 = {EXTREMAL_CENTER} e1"
        ),
        SHELL_SPREAD,
    );

    let one = |_: f64| Ok(ZonalProfile::constant(1.0));
    let sign = |_: f64| ZonalProfile::new(vec![0.0], vec![-1.0, 1.0]);
    let extremal = |rho: f64| {
        let slice = engine.slice(EXTREMAL_CENTER, rho)?;
        ZonalProfile::sign_of(&|t| Ok(slice.eval(t).value), 200)
    };
    let family: [(&str, &(dyn Fn(f64) -> Result<ZonalProfile> + Sync)); 3] =
        [("constant", &one), ("sign_y1", &sign), ("extremal", &extremal)];

    let mut constants = Vec::new();
    for (label, profile) in family {
        let projection = ZonalProjection::new(&ctx.table, profile, r_max, tol, VERIFY_CAP)?;
        let sups = seminorm_by_shell(ctx, &projection, profile)?;
        for (&g, &s) in gaps.iter().zip(&sups) {
            report.row(&format!("{label}.seminorm"), g, s);
        }
        let sup = max_of(&sups);
        report.info(&format!("{label}.terms"), projection.terms() as f64);
        if label == "constant" {
            let origin = projection.eval(&vec![0.0; params.n])?;
            report.check("constant.value_at_origin", origin, Bound::absolute(1.0, 1e-8));
            report.check("constant.seminorm", sup, Bound::at_most(1e-6));
        } else {
            report.check(&format!("{label}.seminorm"), sup, Bound::at_most(f64::MAX));
            report.check(&format!("{label}.shell_spread"), spread(&sups), Bound::at_most(SHELL_SPREAD));
            constants.push(sup);
        }
    }
    report.check("family_spread", spread(&constants), Bound::at_most(SHELL_SPREAD));
    Ok(report)
}
