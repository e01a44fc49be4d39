//! Command line front end.
//!
//! Exit status is 0 on success, 1 when a verification check fails and 2 on
//! configuration, input or evaluation errors.

use crate::bessel::{bessel_zeros, Order};
use crate::error::{Error, Result};
use crate::hankel::{helmholtz_residual, solve_helmholtz_separable, NDPlan, Profile};
use crate::io::{format_number, read_profile, write_field, write_to, Format};
use crate::tensor::{eval_on_grid, eval_product, Family, MultiOrder, SampledField, TensorGrid};
use crate::verify::{run_suite, VerifyConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "hankel-nd", version, about = "Tensor-product Bessel functions and n-D Hankel transforms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a product function at a point or on a grid.
    Eval(EvalArgs),
    /// List positive zeros of J_ν, one per line.
    Zeros(ZerosArgs),
    /// Discrete Hankel transform of a sampled profile.
    Transform(TransformArgs),
    /// Run named numerical checks and print a JSON report.
    Verify(VerifyArgs),
    /// Solve (Σ D_j + c) u = rhs on a transform grid.
    Solve(SolveArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridKind {
    /// `N` equally spaced points per axis on `(0, R]` (`(−1, 1)` for Legendre).
    Uniform,
    /// The transform sample points `j_i R / j_{N+1}` of each axis order.
    Plan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileKind {
    Gaussian,
    PolyGaussian,
    CosGaussian,
}

impl From<ProfileKind> for Profile {
    fn from(kind: ProfileKind) -> Self {
        match kind {
            ProfileKind::Gaussian => Profile::Gaussian { a: 1.0 },
            ProfileKind::PolyGaussian => Profile::PolyGaussian,
            ProfileKind::CosGaussian => Profile::CosGaussian,
        }
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; standard output when omitted.
    #[arg(long = "out")]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, default_value = "bessel", value_parser = parse_family)]
    pub family: Family,
    /// Comma-separated orders; `l:m` pairs for Legendre.
    #[arg(long, value_delimiter = ',', required = true)]
    pub orders: Vec<String>,
    /// Evaluate at a single point and print the value.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub point: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub scale: Option<Vec<f64>>,
    /// Evaluate on the grid of an existing CSV/JSON field.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    #[arg(long, default_value_t = 10.0)]
    pub radius: f64,
    #[arg(long, value_enum, default_value = "uniform")]
    pub grid: GridKind,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ZerosArgs {
    #[arg(long, alias = "orders")]
    pub order: f64,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    /// One order per axis.
    #[arg(long, value_delimiter = ',', required = true)]
    pub orders: Vec<f64>,
    /// Points per axis; taken from the input grid when omitted.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub radius: f64,
    /// Samples on the plan grid (see `eval --grid plan`).
    #[arg(long = "in", conflicts_with = "profile")]
    pub input: Option<PathBuf>,
    /// Built-in separable profile instead of an input file.
    #[arg(long, value_enum)]
    pub profile: Option<ProfileKind>,
    /// Map a spectrum back to samples.
    #[arg(long)]
    pub inverse: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// `all` or a single check name.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 128)]
    pub n: usize,
    #[arg(long, default_value_t = 10.0)]
    pub radius: f64,
    /// Override every check's tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "out")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub orders: Vec<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub radius: f64,
    /// Helmholtz constant.
    #[arg(long, allow_hyphen_values = true)]
    pub c: f64,
    /// Right-hand side on the plan grid.
    #[arg(long = "in", conflicts_with = "profile")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub profile: Option<ProfileKind>,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> std::result::Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Runs a parsed command, writing primary output to `stdout` and
/// diagnostics to `stderr`. Returns the process exit code.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Eval(a) => eval(a, stdout).map(|_| 0),
        Command::Zeros(a) => zeros(a, stdout).map(|_| 0),
        Command::Transform(a) => transform(a, stdout).map(|_| 0),
        Command::Verify(a) => verify(a, stdout),
        Command::Solve(a) => solve(a, stdout, stderr).map(|_| 0),
    };
    match result {
        Ok(code) => code,
        // the reader went away, e.g. `| head`
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn parse_orders(family: Family, raw: &[String]) -> Result<MultiOrder> {
    if family == Family::Legendre {
        let pairs = raw
            .iter()
            .map(|s| {
                let (l, m) =
                    s.split_once(':').ok_or_else(|| Error::Config(format!("legendre index '{s}' is not l:m")))?;
                let parse = |t: &str| t.trim().parse::<u32>().map_err(|_| Error::Config(format!("bad index '{s}'")));
                Ok((parse(l)?, parse(m)?))
            })
            .collect::<Result<Vec<_>>>()?;
        MultiOrder::legendre(&pairs)
    } else {
        let nus = raw
            .iter()
            .map(|s| s.trim().parse::<f64>().map_err(|_| Error::Config(format!("bad order '{s}'"))))
            .collect::<Result<Vec<_>>>()?;
        MultiOrder::new(family, &nus)
    }
}

fn orders_of(raw: &[f64]) -> Result<Vec<Order>> {
    raw.iter().map(|&nu| Order::new(nu).map_err(|e| Error::Config(e.to_string()))).collect()
}

fn emit(field: &SampledField, output: &OutputArgs, stdout: &mut dyn Write) -> Result<()> {
    match &output.out {
        Some(path) => write_field(field, path, output.format),
        None => write_to(field, stdout, output.format),
    }
}

fn eval(a: EvalArgs, stdout: &mut dyn Write) -> Result<()> {
    let order = parse_orders(a.family, &a.orders)?;
    let scale = a.scale.as_deref();
    if let Some(point) = &a.point {
        let v = eval_product(&order, point, scale)?;
        writeln!(stdout, "{}", format_number(v))?;
        return Ok(());
    }
    let grid = match (&a.input, a.grid) {
        (Some(path), _) => read_profile(path)?.grid().clone(),
        (None, GridKind::Plan) => {
            let nus: Vec<f64> = order.indices().iter().map(|i| i.alpha()).collect();
            if order.family() != Family::BesselFirst {
                return Err(Error::Config("--grid plan needs --family bessel".into()));
            }
            NDPlan::build(&orders_of(&nus)?, a.n, a.radius)?.sample_grid()?
        }
        (None, GridKind::Uniform) => uniform_grid(order.family(), order.len(), a.n, a.radius)?,
    };
    emit(&eval_on_grid(&order, &grid, scale)?, &a.output, stdout)
}

fn uniform_grid(family: Family, ndim: usize, n: usize, radius: f64) -> Result<TensorGrid> {
    if n == 0 {
        return Err(Error::Config("--n must be positive".into()));
    }
    let (axis, r): (Vec<f64>, f64) = if family == Family::Legendre {
        ((1..=n).map(|i| -1.0 + 2.0 * i as f64 / (n + 1) as f64).collect(), 1.0)
    } else {
        ((1..=n).map(|i| radius * i as f64 / n as f64).collect(), radius)
    };
    TensorGrid::new(vec![axis; ndim], vec![r; ndim])
}

fn zeros(a: ZerosArgs, stdout: &mut dyn Write) -> Result<()> {
    let order = Order::new(a.order).map_err(|e| Error::Config(e.to_string()))?;
    if a.count == 0 {
        return Err(Error::Config("--count must be at least 1".into()));
    }
    for z in bessel_zeros(order, a.count)? {
        writeln!(stdout, "{}", format_number(z))?;
    }
    Ok(())
}

/// Plan and input field shared by `transform` and `solve`.
fn plan_and_field(
    orders: &[f64],
    n: Option<usize>,
    radius: f64,
    input: Option<&Path>,
    profile: Option<ProfileKind>,
    on_frequency_grid: bool,
) -> Result<(NDPlan, SampledField)> {
    let orders = orders_of(orders)?;
    let field = input.map(read_profile).transpose()?;
    let n = match (n, &field) {
        (Some(n), _) => n,
        (None, Some(f)) => f.grid().shape()[0],
        (None, None) => return Err(Error::Config("--n is required without --in".into())),
    };
    let plan = NDPlan::build(&orders, n, radius)?;
    let field = match (field, profile) {
        (Some(f), _) => f,
        (None, Some(kind)) => {
            let p = Profile::from(kind);
            let grid = if on_frequency_grid { plan.frequency_grid()? } else { plan.sample_grid()? };
            let nus: Vec<f64> = orders.iter().map(|o| o.nu()).collect();
            SampledField::from_fn(grid, |x| x.iter().zip(&nus).map(|(&r, &nu)| p.value(nu, r)).product())?
        }
        (None, None) => return Err(Error::Config("either --in or --profile is required".into())),
    };
    Ok((plan, field))
}

fn transform(a: TransformArgs, stdout: &mut dyn Write) -> Result<()> {
    let (plan, field) = plan_and_field(&a.orders, a.n, a.radius, a.input.as_deref(), a.profile, a.inverse)?;
    let out = if a.inverse { plan.inverse_nd(&field)? } else { plan.forward_nd(&field)? };
    emit(&out, &a.output, stdout)
}

fn verify(a: VerifyArgs, stdout: &mut dyn Write) -> Result<i32> {
    let config = VerifyConfig { n: a.n, radius: a.radius, seed: a.seed, tolerance: a.tol };
    let report = run_suite(&a.suite, &config)?;
    let json = report.to_json()?;
    match &a.out {
        Some(path) => std::fs::write(path, format!("{json}\n"))?,
        None => writeln!(stdout, "{json}")?,
    }
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn solve(a: SolveArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let (plan, rhs) = plan_and_field(&a.orders, a.n, a.radius, a.input.as_deref(), a.profile, false)?;
    let u = solve_helmholtz_separable(&plan, &rhs, a.c)?;
    let per_axis = match plan.ndim() {
        1 => 400,
        2 => 60,
        _ => 16,
    };
    let h = 0.4 * a.radius / per_axis as f64;
    let check = TensorGrid::uniform(&vec![h; plan.ndim()], h, &vec![per_axis; plan.ndim()])?;
    let res = helmholtz_residual(&plan, &rhs, a.c, &u, &check, h)?;
    writeln!(
        stderr,
        "residual: relative {} (max {} over {} interior points, step {})",
        format_number(res.relative),
        format_number(res.max_abs),
        check.len(),
        format_number(h)
    )?;
    emit(&u, &a.output, stdout)
}
