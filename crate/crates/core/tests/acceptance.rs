//! Acceptance suite: one pass/fail line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hyperkernel::coefficients::{a0_closed_form, coef_a, euclid_gamma, euclid_gamma_quadrature, radial_moment};
use hyperkernel::specfun::{beta, gamma, gauss_value, hyp2f1, hyp3f2_unit, unit_series, HypParams21, HypParams32};
use hyperkernel::verify::{
    check_bloch, check_extremal, check_integral_growth, check_schur, growth_cases, run_check, CheckConfig, CheckId,
    VerifyContext, VerifyReport, DEFAULT_PARAMS,
};
use hyperkernel::{Params, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const IDENTITY_SETS: usize = 50;
const IDENTITY_TOL: f64 = 1e-10;
const ORACLE_TOL: f64 = 1e-12;
const A0_TOL: f64 = 1e-10;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self { passed, detail: detail.into() }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Draws parameters until `admissible` holds, then returns the relative gap.
fn identity_gaps(
    seed: u64,
    draw: impl Fn(&mut ChaCha8Rng) -> Vec<f64>,
    admissible: impl Fn(&[f64]) -> bool,
    gap: impl Fn(&[f64]) -> Result<f64>,
) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut used = 0;
    while used < IDENTITY_SETS {
        let p = draw(&mut rng);
        if !admissible(&p) {
            continue;
        }
        worst = worst.max(gap(&p)?);
        used += 1;
    }
    Ok(worst)
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..hi)
}

fn away_from_poles(xs: &[f64]) -> bool {
    xs.iter().all(|&x| x > 0.05 || (x - x.round()).abs() > 0.05)
}

fn special_functions() -> Result<Outcome> {
    let euler = identity_gaps(
        1,
        |r| vec![uniform(r, -2.0, 3.0), uniform(r, -2.0, 3.0), uniform(r, 0.3, 4.0), uniform(r, -0.9, 0.9)],
        |p| away_from_poles(&[p[2], p[2] - p[0], p[2] - p[1]]),
        |p| {
            let (a, b, c, z) = (p[0], p[1], p[2], p[3]);
            let lhs = hyp2f1(&HypParams21::new(a, b, c)?, z)?;
            let rhs = (1.0 - z).powf(c - a - b) * hyp2f1(&HypParams21::new(c - a, c - b, c)?, z)?;
            Ok(rel(rhs, lhs))
        },
    )?;
    let gauss = identity_gaps(
        2,
        |r| vec![uniform(r, -2.0, 3.0), uniform(r, -2.0, 3.0), uniform(r, 0.3, 6.0)],
        |p| p[2] - p[0] - p[1] > 0.5 && away_from_poles(&[p[2], p[2] - p[0], p[2] - p[1]]),
        |p| Ok(rel(gauss_value(p[0], p[1], p[2])?, unit_series(&[p[0], p[1]], &[p[2]])?)),
    )?;
    let dixon = identity_gaps(
        3,
        |r| vec![uniform(r, 0.5, 5.0), uniform(r, -1.5, 1.5), uniform(r, -1.5, 1.5)],
        |p| {
            let (a, b, c) = (p[0], p[1], p[2]);
            a - 2.0 * b - 2.0 * c > -1.5
                && away_from_poles(&[a - b + 1.0, a - c + 1.0, a / 2.0 - b - c + 1.0, a - b - c + 1.0])
                && away_from_poles(&[a / 2.0 - b + 1.0, a / 2.0 - c + 1.0])
        },
        |p| {
            let (a, b, c) = (p[0], p[1], p[2]);
            let series = hyp3f2_unit(&HypParams32::new(a, b, c, a - b + 1.0, a - c + 1.0)?)?;
            let closed = gamma(a / 2.0 + 1.0)?
                * gamma(a - b + 1.0)?
                * gamma(a - c + 1.0)?
                * gamma(a / 2.0 - b - c + 1.0)?
                / (gamma(a + 1.0)? * gamma(a / 2.0 - b + 1.0)? * gamma(a / 2.0 - c + 1.0)? * gamma(a - b - c + 1.0)?);
            Ok(rel(series, closed))
        },
    )?;
    let kummer = identity_gaps(
        4,
        |r| {
            vec![
                uniform(r, -1.0, 2.0),
                uniform(r, -1.0, 2.0),
                uniform(r, -1.0, 2.0),
                uniform(r, 0.5, 4.0),
                uniform(r, 0.5, 4.0),
            ]
        },
        |p| {
            let (a, b, c, d, e) = (p[0], p[1], p[2], p[3], p[4]);
            d + e - a - b - c > 0.5 && e - a > 0.5 && away_from_poles(&[a, b, c, d - b, d - c])
        },
        |p| {
            let (a, b, c, d, e) = (p[0], p[1], p[2], p[3], p[4]);
            let lhs = hyp3f2_unit(&HypParams32::new(a, b, c, d, e)?)?;
            let s = d + e - a - b - c;
            let front = gamma(e)? * gamma(s)? / (gamma(e - a)? * gamma(d + e - b - c)?);
            let rhs = front * hyp3f2_unit(&HypParams32::new(a, d - b, d - c, d, d + e - b - c)?)?;
            Ok(rel(rhs, lhs))
        },
    )?;
    let worst = euler.max(gauss).max(dixon).max(kummer);
    Ok(Outcome::new(
        worst <= IDENTITY_TOL,
        format!("max relative gaps: Euler {euler:.1e}, Gauss {gauss:.1e}, Dixon {dixon:.1e}, Kummer {kummer:.1e}"),
    ))
}

fn quadrature_oracle() -> Result<Outcome> {
    let mut worst_beta: f64 = 0.0;
    let mut worst_gamma: f64 = 0.0;
    for (n, alpha) in [(3, 0.0), (4, 0.5)] {
        let p = Params::new(n, alpha)?;
        let h = p.half_n();
        for m in 0..=50 {
            let want = beta(m as f64 + h, alpha + 1.0)? / beta(h, alpha + 1.0)?;
            worst_beta = worst_beta.max(rel(radial_moment(m, &p)?, want));
            worst_gamma = worst_gamma.max(rel(euclid_gamma_quadrature(m, &p)?, euclid_gamma(m, &p)?));
        }
    }
    Ok(Outcome::new(
        worst_beta <= ORACLE_TOL && worst_gamma <= ORACLE_TOL,
        format!("Beta moments {worst_beta:.1e}, gamma_m {worst_gamma:.1e} for m <= 50"),
    ))
}

fn a0_consistency() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for (n, alpha) in DEFAULT_PARAMS {
        let p = Params::new(n, alpha)?;
        worst = worst.max(rel(coef_a(0, &p)?, a0_closed_form(&p)?));
    }
    Ok(Outcome::new(worst <= A0_TOL, format!("max relative gap {worst:.1e}")))
}

fn show(v: f64) -> String {
    if v != 0.0 && v.abs() < 1e-3 {
        format!("{v:.2e}")
    } else {
        format!("{v:.4}")
    }
}

fn summarize(reports: &[VerifyReport], keys: &[&str]) -> Outcome {
    let passed = !reports.is_empty() && reports.iter().all(|r| r.passed);
    let parts: Vec<String> = reports
        .iter()
        .map(|r| {
            let stats: Vec<String> =
                keys.iter().filter_map(|k| r.statistics.get(*k).map(|v| format!("{k} {}", show(*v)))).collect();
            let failed = if r.passed { String::new() } else { format!(" FAILED {:?}", r.failures()) };
            format!("({}, {}) {}{failed}", r.params.n, r.params.alpha, stats.join(" "))
        })
        .collect();
    Outcome::new(passed, parts.join("; "))
}

struct Suite {
    contexts: Vec<VerifyContext>,
}

impl Suite {
    fn new() -> Result<Self> {
        let contexts = DEFAULT_PARAMS
            .iter()
            .map(|&(n, alpha)| VerifyContext::new(CheckConfig::new(Params::new(n, alpha)?)))
            .collect::<Result<_>>()?;
        Ok(Self { contexts })
    }

    fn run(&self, id: CheckId, filter: impl Fn(&VerifyContext) -> bool) -> Result<Vec<VerifyReport>> {
        let mut out = Vec::new();
        for ctx in self.contexts.iter().filter(|c| filter(c)) {
            out.extend(run_check(id, ctx)?);
        }
        Ok(out)
    }

    fn all(&self, id: CheckId) -> Result<Vec<VerifyReport>> {
        self.run(id, |_| true)
    }

    fn first_per_dimension(&self) -> Vec<&VerifyContext> {
        let mut seen = Vec::new();
        self.contexts
            .iter()
            .filter(|c| {
                let n = c.params().n;
                let fresh = !seen.contains(&n);
                seen.push(n);
                fresh
            })
            .collect()
    }
}

fn trichotomy(suite: &Suite) -> Result<Outcome> {
    let ctx =
        suite.contexts.iter().find(|c| c.params() == Params::new(3, 0.0).unwrap()).expect("(3, 0) is a default pair");
    let reports =
        growth_cases(0.0).iter().map(|&(p, beta)| check_integral_growth(ctx, p, beta)).collect::<Result<Vec<_>>>()?;
    let details: Vec<String> = reports
        .iter()
        .map(|r| {
            let key = ["exponent", "log_r2", "bounded_spread"].into_iter().find(|k| r.statistics.contains_key(*k));
            let value = key.and_then(|k| r.statistics.get(k)).copied().unwrap_or(f64::NAN);
            format!(
                "(p, beta) = ({}, {}): {} {value:.4}",
                r.params.p.unwrap_or(f64::NAN),
                r.params.beta.unwrap_or(f64::NAN),
                key.unwrap_or("?")
            )
        })
        .collect();
    Ok(Outcome::new(reports.iter().all(|r| r.passed), details.join("; ")))
}

fn projection(suite: &Suite) -> Result<Outcome> {
    let mut reports = Vec::new();
    for ctx in &suite.contexts {
        let alpha = ctx.params().alpha;
        reports.push(check_schur(ctx, 2.0, alpha)?);
        reports.push(check_extremal(ctx)?);
        reports.push(check_bloch(ctx)?);
    }
    let passed = reports.iter().all(|r| r.passed);
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("{} ({}, {}) {:?}", r.check_id, r.params.n, r.params.alpha, r.failures()))
        .collect();
    let detail = if passed {
        let spreads: Vec<String> = reports
            .iter()
            .filter(|r| r.check_id == "bloch")
            .map(|r| format!("({}, {}) family spread {:.3}", r.params.n, r.params.alpha, r.statistics["family_spread"]))
            .collect();
        format!("Schur, extremal log growth and Bloch pass for all pairs; {}", spreads.join(", "))
    } else {
        failed.join("; ")
    };
    Ok(Outcome::new(passed, detail))
}

type Criterion<'a> = (&'static str, Option<Duration>, Box<dyn Fn() -> Result<Outcome> + 'a>);

fn main() -> ExitCode {
    let start = Instant::now();
    let suite = match Suite::new() {
        Ok(s) => s,
        Err(e) => {
            println!("acceptance: cannot build kernel engines: {e}");
            return ExitCode::FAILURE;
        }
    };
    println!("acceptance: engines ready in {:.1} s", start.elapsed().as_secs_f64());
    let s = &suite;
    let minutes = |m: u64| Some(Duration::from_secs(60 * m));
    let criteria: Vec<Criterion<'_>> = vec![
        ("special-function identities", Some(Duration::from_secs(10)), Box::new(special_functions)),
        ("quadrature oracle", Some(Duration::from_secs(5)), Box::new(quadrature_oracle)),
        (
            "coefficient asymptotics",
            minutes(2),
            Box::new(|| {
                let keys = [
                    "residual_slope.K1",
                    "residual_slope.K2",
                    "residual_slope.K3",
                    "residual_max.K2",
                    "c_m_relative_gap",
                    "a2",
                ];
                Ok(summarize(&s.all(CheckId::Coefficients)?, &keys))
            }),
        ),
        ("A_0 consistency", None, Box::new(a0_consistency)),
        (
            "kernel bound sharpness",
            minutes(5),
            Box::new(|| {
                let keys = ["bergman.diagonal_exponent", "bergman.shell_spread"];
                Ok(summarize(&s.all(CheckId::KernelUpper)?, &keys))
            }),
        ),
        (
            "gradient bound",
            None,
            Box::new(|| Ok(summarize(&s.all(CheckId::Gradient)?, &["fd_max_error", "shell_spread"]))),
        ),
        (
            "lower bounds",
            None,
            Box::new(|| Ok(summarize(&s.all(CheckId::KernelLower)?, &["aperture", "min_ratio", "shell_spread"]))),
        ),
        ("integral trichotomy", minutes(5), Box::new(|| trichotomy(s))),
        (
            "reproducing property",
            None,
            Box::new(|| {
                let reports = s.run(CheckId::Reproducing, |c| c.params().n == 3)?;
                Ok(summarize(&reports, &["max_relative_error"]))
            }),
        ),
        (
            "mean value",
            None,
            Box::new(|| Ok(summarize(&s.all(CheckId::MeanValue)?, &["sphere_mean_error", "weighted_spread"]))),
        ),
        (
            "Hardy kernel",
            None,
            Box::new(|| {
                let mut reports = Vec::new();
                for ctx in s.first_per_dimension() {
                    reports.extend(run_check(CheckId::Hardy, ctx)?);
                }
                Ok(summarize(&reports, &["min_value_plus_tail", "diagonal_exponent"]))
            }),
        ),
        ("projection and Bloch", None, Box::new(|| projection(s))),
    ];

    let mut failures = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let mut outcome = run().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        let elapsed = t.elapsed();
        if let Some(limit) = budget {
            if elapsed > *limit {
                outcome.passed = false;
                outcome.detail.push_str(&format!("; over the {} s budget", limit.as_secs()));
            }
        }
        if !outcome.passed {
            failures += 1;
        }
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} [{verdict}] {name}: {} ({:.1} s)", k + 1, outcome.detail, elapsed.as_secs_f64());
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1} s",
        criteria.len() - failures,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
