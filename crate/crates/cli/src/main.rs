//! `hyperkernel`: coefficient tables, kernel values, projections and checks.

mod output;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperkernel::coefficients::{DEFAULT_M_MAX, DEFAULT_ORDER};
use hyperkernel::json;
use hyperkernel::kernels::{KernelKind, KernelSeries, KernelValue, DEFAULT_TRUNCATION_CAP};
use hyperkernel::verify::{
    run_check, verify_all, CheckConfig, CheckId, VerifyContext, VerifyReport, ZonalProfile, ZonalProjection,
    DEFAULT_PARAMS, VERIFY_CAP, VERIFY_TOL,
};
use hyperkernel::{CoefTable, Error, Params};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "hyperkernel", version, about = "Reproducing kernels of H-harmonic function spaces on the unit ball")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact coefficients c_m(alpha) and the asymptotic expansion constants.
    Coef(CoefArgs),
    /// Evaluate a reproducing kernel, optionally with its gradient in x.
    Kernel(KernelArgs),
    /// Evaluate the Bergman projection of a zonal test field.
    Project(ProjectArgs),
    /// Run one named check.
    Verify(VerifyArgs),
    /// Run the check suite for the default parameter pairs.
    VerifyAll(VerifyAllArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Dimension of the ball.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Weight exponent, alpha > -1.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha: f64,
}

impl ParamArgs {
    fn params(&self) -> Result<Params, CliError> {
        Params::new(self.n, self.alpha).map_err(flag("--n/--alpha"))
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CoefArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value_t = DEFAULT_M_MAX)]
    m_max: usize,
    /// Number of expansion constants.
    #[arg(long = "K", default_value_t = DEFAULT_ORDER)]
    order: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Bergman,
    Hardy,
    Euclid,
}

#[derive(Debug, Args)]
struct KernelArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value_t = KindArg::Bergman)]
    kind: KindArg,
    /// First point, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    x: Vec<f64>,
    /// Second point, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    y: Vec<f64>,
    /// Print the gradient in x as well.
    #[arg(long)]
    gradient: bool,
    #[arg(long, default_value_t = VERIFY_TOL)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_M_MAX)]
    m_max: usize,
    #[arg(long = "K", default_value_t = DEFAULT_ORDER)]
    order: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FieldArg {
    /// f = 1
    Constant,
    /// f(y) = sign y1
    SignY1,
    /// f(y) = sign R(x0 e1, y)
    Extremal,
}

#[derive(Debug, Args)]
struct ProjectArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value_t = FieldArg::SignY1)]
    field: FieldArg,
    /// Evaluation point, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    x: Vec<f64>,
    /// Radius of the centre of the extremal field.
    #[arg(long, default_value_t = 0.9)]
    x0: f64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_M_MAX)]
    m_max: usize,
    #[arg(long = "K", default_value_t = DEFAULT_ORDER)]
    order: usize,
    /// Relative truncation tolerance of the kernel series.
    #[arg(long, default_value_t = VERIFY_TOL)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Expected diagonal exponent for kernel_upper (negative control).
    #[arg(long, allow_hyphen_values = true)]
    debug_exponent: Option<f64>,
    /// Record wall-clock runtimes in the reports.
    #[arg(long)]
    timing: bool,
    /// Worker threads.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
}

impl CheckArgs {
    fn config(&self, params: Params) -> Result<CheckConfig, CliError> {
        if !(self.tol > 0.0) {
            return Err(CliError::Usage(format!("--tol must be positive, got {}", self.tol)));
        }
        if self.order == 0 {
            return Err(CliError::Usage("--K must be at least 1".into()));
        }
        Ok(CheckConfig {
            beta: self.beta,
            p: self.p,
            m_max: self.m_max,
            order: self.order,
            tol: self.tol,
            seed: self.seed,
            debug_exponent: self.debug_exponent,
            timing: self.timing,
            ..CheckConfig::new(params)
        })
    }

    fn pool(&self) -> Result<rayon::ThreadPool, CliError> {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(jobs) = self.jobs {
            builder = builder.num_threads(jobs as usize);
        }
        builder.build().map_err(|e| CliError::Runtime(format!("cannot start worker pool: {e}")))
    }
}

fn parse_check(s: &str) -> Result<CheckId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_parser = parse_check)]
    check: CheckId,
    #[command(flatten)]
    opts: CheckArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct VerifyAllArgs {
    /// Restrict to one dimension (with --alpha) instead of the default pairs.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Checks to run; all by default.
    #[arg(long, value_parser = parse_check, value_delimiter = ',')]
    check: Vec<CheckId>,
    #[command(flatten)]
    opts: CheckArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Runtime(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage(msg) | Self::Runtime(msg) => f.write_str(msg),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::Domain(_) | Error::Condition(_) | Error::Unsupported(_) => {
                Self::Usage(e.to_string())
            }
            _ => Self::Runtime(e.to_string()),
        }
    }
}

/// Attaches the offending flag to a library error.
fn flag(name: &'static str) -> impl Fn(Error) -> CliError {
    move |e| match CliError::from(e) {
        CliError::Usage(msg) => CliError::Usage(format!("{name}: {msg}")),
        other => other,
    }
}

fn emit(text: &str, out: &OutputArgs) -> Result<(), CliError> {
    match &out.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    let mut text = json::to_string_pretty(value).map_err(|e| CliError::Runtime(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn json_only(out: &OutputArgs, command: &str) -> Result<(), CliError> {
    if out.format == Format::Csv {
        return Err(CliError::Usage(format!("--format csv is not available for `{command}`")));
    }
    Ok(())
}

fn coef(args: &CoefArgs) -> Result<bool, CliError> {
    let params = args.params.params()?;
    if args.order == 0 {
        return Err(CliError::Usage("--K must be at least 1".into()));
    }
    let table = CoefTable::new(params, args.m_max, args.order).map_err(flag("--m-max/--K"))?;
    let text = match args.out.format {
        Format::Json => {
            let mut text = table.to_json();
            text.push('\n');
            text
        }
        Format::Csv => output::coef_csv(&table)?,
    };
    emit(&text, &args.out)?;
    Ok(true)
}

#[derive(Serialize)]
struct KernelOutput<'a> {
    kind: KernelKind,
    n: usize,
    alpha: f64,
    x: &'a [f64],
    y: &'a [f64],
    kernel: KernelValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    gradient: Option<Vec<KernelValue>>,
}

fn kernel(args: &KernelArgs) -> Result<bool, CliError> {
    json_only(&args.out, "kernel")?;
    let params = args.params.params()?;
    if args.x.len() != params.n || args.y.len() != params.n {
        return Err(CliError::Usage(format!("--x and --y need {} coordinates", params.n)));
    }
    let cap = DEFAULT_TRUNCATION_CAP;
    let engine = match args.kind {
        KindArg::Bergman => {
            let table = CoefTable::new(params, args.m_max, args.order).map_err(flag("--m-max/--K"))?;
            KernelSeries::bergman(&table, args.tol, cap)
        }
        KindArg::Hardy => KernelSeries::hardy(params.n, args.tol, cap),
        KindArg::Euclid => KernelSeries::euclid(params, args.tol, cap),
    }
    .map_err(flag("--tol"))?;
    let value = engine.eval(&args.x, &args.y).map_err(flag("--x/--y"))?;
    let gradient = if args.gradient { Some(engine.gradient(&args.x, &args.y).map_err(flag("--x/--y"))?) } else { None };
    let report = KernelOutput {
        kind: engine.kind(),
        n: params.n,
        alpha: if args.kind == KindArg::Hardy { 0.0 } else { params.alpha },
        x: &args.x,
        y: &args.y,
        kernel: value,
        gradient,
    };
    emit(&to_json(&report)?, &args.out)?;
    Ok(true)
}

#[derive(Serialize)]
struct ProjectOutput<'a> {
    field: &'static str,
    n: usize,
    alpha: f64,
    x: &'a [f64],
    value: f64,
    tail_bound: f64,
    terms: usize,
}

fn project(args: &ProjectArgs) -> Result<bool, CliError> {
    json_only(&args.out, "project")?;
    let params = args.params.params()?;
    if args.x.len() != params.n {
        return Err(CliError::Usage(format!("--x needs {} coordinates", params.n)));
    }
    if !(0.0..1.0).contains(&args.x0) {
        return Err(CliError::Usage(format!("--x0 must lie in [0, 1), got {}", args.x0)));
    }
    let r = hyperkernel::geometry::euclidean_norm(&args.x);
    if !(r < 1.0) {
        return Err(CliError::Usage(format!("--x must lie in the open ball, got |x| = {r}")));
    }
    let table = CoefTable::with_defaults(params)?;
    let engine = KernelSeries::bergman(&table, VERIFY_TOL, VERIFY_CAP)?;
    let one = |_: f64| Ok(ZonalProfile::constant(1.0));
    let sign = |_: f64| ZonalProfile::new(vec![0.0], vec![-1.0, 1.0]);
    let extremal = |rho: f64| {
        let slice = engine.slice(args.x0, rho)?;
        ZonalProfile::sign_of(&|t| Ok(slice.eval(t).value), 200)
    };
    let (name, profile): (&'static str, &(dyn Fn(f64) -> hyperkernel::Result<ZonalProfile> + Sync)) = match args.field {
        FieldArg::Constant => ("constant", &one),
        FieldArg::SignY1 => ("sign-y1", &sign),
        FieldArg::Extremal => ("extremal", &extremal),
    };
    let projection = ZonalProjection::new(&table, profile, r, args.tol, VERIFY_CAP).map_err(flag("--tol"))?;
    let value = projection.eval(&args.x)?;
    let report = ProjectOutput {
        field: name,
        n: params.n,
        alpha: params.alpha,
        x: &args.x,
        value,
        tail_bound: projection.tail_bound(),
        terms: projection.terms(),
    };
    emit(&to_json(&report)?, &args.out)?;
    Ok(true)
}

fn write_reports(reports: &[VerifyReport], out: &OutputArgs, summary: bool) -> Result<bool, CliError> {
    let passed = reports.iter().all(|r| r.passed);
    let text = match out.format {
        Format::Csv => output::reports_csv(reports)?,
        Format::Json if summary => to_json(&Summary::new(reports))?,
        Format::Json => to_json(reports)?,
    };
    emit(&text, out)?;
    Ok(passed)
}

#[derive(Serialize)]
struct Summary<'a> {
    passed: bool,
    total: usize,
    failed: Vec<String>,
    reports: &'a [VerifyReport],
}

impl<'a> Summary<'a> {
    fn new(reports: &'a [VerifyReport]) -> Self {
        let failed = reports
            .iter()
            .filter(|r| !r.passed)
            .map(|r| format!("{} (n = {}, alpha = {})", r.check_id, r.params.n, r.params.alpha))
            .collect::<Vec<_>>();
        Self { passed: failed.is_empty(), total: reports.len(), failed, reports }
    }
}

fn verify(args: &VerifyArgs) -> Result<bool, CliError> {
    let config = args.opts.config(args.params.params()?)?;
    let reports = args.opts.pool()?.install(|| -> Result<_, CliError> {
        let ctx = VerifyContext::new(config)?;
        run_check(args.check, &ctx).map_err(flag("--check"))
    })?;
    write_reports(&reports, &args.out, false)
}

fn verify_suite(args: &VerifyAllArgs) -> Result<bool, CliError> {
    let pairs = match (args.n, args.alpha) {
        (None, None) => DEFAULT_PARAMS.to_vec(),
        (n, alpha) => vec![(n.unwrap_or(3), alpha.unwrap_or(0.0))],
    };
    for &(n, alpha) in &pairs {
        Params::new(n, alpha).map_err(flag("--n/--alpha"))?;
    }
    let template = args.opts.config(Params::new(pairs[0].0, pairs[0].1)?)?;
    let checks = if args.check.is_empty() { CheckId::ALL.to_vec() } else { args.check.clone() };
    let reports = args.opts.pool()?.install(|| verify_all(&pairs, &checks, &template))?;
    write_reports(&reports, &args.out, true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Coef(args) => coef(args),
        Command::Kernel(args) => kernel(args),
        Command::Project(args) => project(args),
        Command::Verify(args) => verify(args),
        Command::VerifyAll(args) => verify_suite(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
