//! Numerical checks of the kernel estimates, each producing a [`VerifyReport`].
//!
//! Estimates with unspecified constants are tested through surrogates: fitted
//! growth exponents against the shell gaps `1 - |x|²`, and the spread
//! `max / min` of a normalized quantity across boundary shells.

mod bloch;
mod coefficients;
pub mod grids;
mod integrals;
mod kernel;
mod project;
mod report;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::coefficients::CoefTable;
use crate::error::{Error, Result};
use crate::geometry::Params;
use crate::kernels::KernelSeries;

pub use bloch::check_bloch;
pub use coefficients::check_coefficients;
pub use integrals::{check_extremal, check_integral_growth, check_mean_value, check_reproducing, check_schur};
pub use kernel::{check_gradient, check_hardy, check_kernel_lower, check_kernel_upper};
pub use project::{bergman_project, bergman_project_axial, ZonalProfile, ZonalProjection};
pub use report::{Bound, GridRow, ReportParams, VerifyReport};

/// Parameter pairs `(n, α)` of the default suite.
pub const DEFAULT_PARAMS: [(usize, f64); 3] = [(3, 0.0), (3, 1.5), (4, 0.5)];

/// Series truncation cap used by the checks.
pub const VERIFY_CAP: usize = 400_000;

/// Kernel truncation tolerance used by the checks.
pub const VERIFY_TOL: f64 = 1e-12;

/// Registered checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    Coefficients,
    KernelUpper,
    KernelLower,
    Gradient,
    Hardy,
    IntegralGrowth,
    Reproducing,
    MeanValue,
    Schur,
    Extremal,
    Bloch,
}

impl CheckId {
    pub const ALL: [CheckId; 11] = [
        CheckId::Coefficients,
        CheckId::KernelUpper,
        CheckId::KernelLower,
        CheckId::Gradient,
        CheckId::Hardy,
        CheckId::IntegralGrowth,
        CheckId::Reproducing,
        CheckId::MeanValue,
        CheckId::Schur,
        CheckId::Extremal,
        CheckId::Bloch,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckId::Coefficients => "coefficients",
            CheckId::KernelUpper => "kernel_upper",
            CheckId::KernelLower => "kernel_lower",
            CheckId::Gradient => "gradient",
            CheckId::Hardy => "hardy",
            CheckId::IntegralGrowth => "integral_growth",
            CheckId::Reproducing => "reproducing",
            CheckId::MeanValue => "mean_value",
            CheckId::Schur => "schur",
            CheckId::Extremal => "extremal",
            CheckId::Bloch => "bloch",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown check `{s}`")))
    }
}

/// Inputs shared by all checks.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckConfig {
    pub params: Params,
    pub beta: Option<f64>,
    pub p: Option<f64>,
    pub m_max: usize,
    pub order: usize,
    pub tol: f64,
    pub seed: u64,
    pub shells: Vec<f64>,
    /// Replaces the expected diagonal exponent of `kernel_upper`.
    pub debug_exponent: Option<f64>,
    pub timing: bool,
}

impl CheckConfig {
    pub fn new(params: Params) -> Self {
        Self {
            params,
            beta: None,
            p: None,
            m_max: crate::coefficients::DEFAULT_M_MAX,
            order: crate::coefficients::DEFAULT_ORDER,
            tol: VERIFY_TOL,
            seed: 0,
            shells: grids::default_shells(),
            debug_exponent: None,
            timing: false,
        }
    }
}

/// Coefficient table and kernel engines for one parameter pair.
pub struct VerifyContext {
    pub config: CheckConfig,
    pub table: CoefTable,
    pub bergman: KernelSeries,
    pub hardy: KernelSeries,
    pub euclid: KernelSeries,
}

impl VerifyContext {
    pub fn new(config: CheckConfig) -> Result<Self> {
        grids::check_shells(&config.shells)?;
        let table = CoefTable::new(config.params, config.m_max, config.order)?;
        let bergman = KernelSeries::bergman(&table, config.tol, VERIFY_CAP)?;
        let hardy = KernelSeries::hardy(config.params.n, config.tol, VERIFY_CAP)?;
        let euclid = KernelSeries::euclid(config.params, config.tol, VERIFY_CAP)?;
        Ok(Self { config, table, bergman, hardy, euclid })
    }

    pub fn params(&self) -> Params {
        self.config.params
    }

    /// Engine for `R_β` with the same truncation settings.
    pub fn bergman_for(&self, beta: f64) -> Result<KernelSeries> {
        let params = self.params().with_alpha(beta)?;
        let table = CoefTable::new(params, self.config.m_max, self.config.order)?;
        KernelSeries::bergman(&table, self.config.tol, VERIFY_CAP)
    }
}

/// `(p, β)` pairs of the integral-growth suite: `c > 0`, `c = 0` and `c < 0`.
pub fn growth_cases(alpha: f64) -> [(f64, f64); 3] {
    [(2.0, alpha), (1.0, alpha), (1.0, alpha + 2.0)]
}

/// Runs one check with the configured `p` and `β` (or the check's defaults).
pub fn run_check(id: CheckId, ctx: &VerifyContext) -> Result<Vec<VerifyReport>> {
    let start = Instant::now();
    let alpha = ctx.params().alpha;
    let mut reports = match id {
        CheckId::Coefficients => vec![check_coefficients(ctx)?],
        CheckId::KernelUpper => vec![check_kernel_upper(ctx)?],
        CheckId::KernelLower => vec![check_kernel_lower(ctx)?],
        CheckId::Gradient => vec![check_gradient(ctx)?],
        CheckId::Hardy => vec![check_hardy(ctx)?],
        CheckId::IntegralGrowth => match (ctx.config.p, ctx.config.beta) {
            (None, None) => growth_cases(alpha)
                .iter()
                .map(|&(p, beta)| check_integral_growth(ctx, p, beta))
                .collect::<Result<_>>()?,
            (p, beta) => vec![check_integral_growth(ctx, p.unwrap_or(1.0), beta.unwrap_or(alpha))?],
        },
        CheckId::Reproducing => vec![check_reproducing(ctx)?],
        CheckId::MeanValue => vec![check_mean_value(ctx)?],
        CheckId::Schur => vec![check_schur(ctx, ctx.config.p.unwrap_or(2.0), ctx.config.beta.unwrap_or(alpha))?],
        CheckId::Extremal => vec![check_extremal(ctx)?],
        CheckId::Bloch => vec![check_bloch(ctx)?],
    };
    if ctx.config.timing {
        let elapsed = start.elapsed().as_secs_f64() / reports.len() as f64;
        reports.iter_mut().for_each(|r| r.runtime = Some(elapsed));
    }
    Ok(reports)
}

/// Runs `checks` for every parameter pair, in a fixed order.
pub fn verify_all(pairs: &[(usize, f64)], checks: &[CheckId], template: &CheckConfig) -> Result<Vec<VerifyReport>> {
    let contexts = pairs
        .iter()
        .map(|&(n, alpha)| {
            let config = CheckConfig { params: Params::new(n, alpha)?, ..template.clone() };
            VerifyContext::new(config)
        })
        .collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(&VerifyContext, CheckId)> =
        contexts.iter().flat_map(|ctx| checks.iter().map(move |&id| (ctx, id))).collect();
    let nested = jobs.par_iter().map(|&(ctx, id)| run_check(id, ctx)).collect::<Result<Vec<_>>>()?;
    Ok(nested.into_iter().flatten().collect())
}
