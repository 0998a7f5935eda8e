//! Command-line front end. Tables go to stdout as CSV, diagnostics to stderr.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or domain
//! error, 3 numeric overflow.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dist::{CountModel, Family};
use crate::error::{Error, Result};
use crate::series::{SeriesOptions, SumResult, DEFAULT_TOLERANCE};
use crate::special::{alpha_ml_with, gcom_normalizer_with, wright_with, GcomNormalizerParams, MLParams};
use crate::verify::{run_all, run_check, CheckConfig};

/// Environment variable supplying the default for `verify --tol`.
pub const TOL_ENV: &str = "HADAMARD_ML_TOL";

#[derive(Debug, Parser)]
#[command(name = "hadamard-ml", version, about = "α-Mittag-Leffler functions, Hadamard operators and weighted-Poisson counts")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate a special function: columns t,value,terms_used.
    Eval(EvalArgs),
    /// Tabulate or sample a count distribution.
    Dist(DistArgs),
    /// Run identity checks: one row per report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Function {
    /// Σ z^k / Γ(νk+γ)^α (--alpha --nu --gamma)
    AlphaMl,
    /// Σ z^k / Γ(νk+γ) (--nu --gamma)
    Ml,
    /// Σ z^k / ((k+1)!)^α (--alpha)
    LeRoy,
    /// Σ z^k / (k! Γ(ak+b)) (--a --b)
    Wright,
    /// Σ Γ(ν+k)^r z^k / k! (--r --nu)
    GcomNormalizer,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    function: Function,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    nu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
    /// Arguments as start:stop:step.
    #[arg(long, allow_hyphen_values = true)]
    points: String,
    /// Series stopping tolerance.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DistQuery {
    Pmf,
    Pgf,
    Moments,
    Sample,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyName {
    Poisson,
    #[value(alias = "com-poisson", alias = "com_poisson")]
    Com,
    #[value(alias = "fractional-poisson", alias = "fractional_poisson")]
    Fpoisson,
    #[value(alias = "fractional-com-poisson", alias = "fractional_com_poisson")]
    Fcom,
    #[value(alias = "gcom-poisson", alias = "gcom_poisson")]
    Gcom,
}

#[derive(Debug, Args)]
struct DistArgs {
    #[arg(value_enum)]
    query: DistQuery,
    #[arg(long, value_enum)]
    family: FamilyName,
    #[arg(long, allow_negative_numbers = true)]
    nu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    lambda: f64,
    #[arg(long, allow_negative_numbers = true)]
    t: f64,
    /// Largest k for pmf.
    #[arg(long, default_value_t = 20)]
    kmax: u64,
    /// Number of draws for sample.
    #[arg(short = 'n', long = "count", default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Values of u for pgf, as start:stop:step.
    #[arg(long, default_value = "0:1:0.1", allow_hyphen_values = true)]
    points: String,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("which").required(true).args(["check", "all"])))]
struct VerifyArgs {
    #[arg(long)]
    check: Option<String>,
    #[arg(long)]
    all: bool,
    #[arg(long, allow_negative_numbers = true)]
    nu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Argument grid: comma-separated values or start:stop:step.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Pass/fail tolerance for every report.
    #[arg(long, env = TOL_ENV)]
    tol: Option<f64>,
}

/// Renders a double so that it parses back to the same value: shortest
/// round-trip digits, exponent form outside `[1e-5, 1e17)`.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = x.abs();
    if a == 0.0 || (1e-5..1e17).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Parses `start:stop:step`. `stop` is included when `stop - start` is a
/// multiple of `step` to within 1e-12.
pub fn parse_range(spec: &str) -> Result<Vec<f64>> {
    let bad = || Error::Domain(format!("range must be start:stop:step, got '{spec}'"));
    let parts: Vec<f64> = spec
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let [start, stop, step] = parts[..] else { return Err(bad()) };
    if !(start.is_finite() && stop.is_finite() && step > 0.0 && step.is_finite()) || stop < start {
        return Err(Error::Domain(format!("range needs finite start <= stop and step > 0, got '{spec}'")));
    }
    let ratio = (stop - start) / step;
    let nearest = ratio.round();
    let hits_stop = (ratio - nearest).abs() <= 1e-12 * nearest.max(1.0);
    let last = if hits_stop { nearest } else { ratio.floor() };
    if last > 1e7 {
        return Err(Error::Domain(format!("range '{spec}' has too many points")));
    }
    let last = last as usize;
    Ok((0..=last)
        .map(|i| if hits_stop && i == last { stop } else { start + i as f64 * step })
        .collect())
}

fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    if spec.contains(':') {
        return parse_range(spec);
    }
    spec.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| Error::Domain(format!("bad grid value '{p}'"))))
        .collect()
}

fn need(name: &str, v: Option<f64>, missing: &mut Vec<String>) -> f64 {
    v.unwrap_or_else(|| {
        missing.push(format!("--{name} is required"));
        f64::NAN
    })
}

fn write_csv(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> std::io::Result<()> {
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

fn cmd_eval(args: &EvalArgs, out: &mut dyn Write) -> Result<i32> {
    let opts = SeriesOptions::with_tolerance(args.tol);
    let points = parse_range(&args.points)?;
    let mut missing = Vec::new();
    let eval: Box<dyn Fn(f64) -> Result<SumResult>> = match args.function {
        Function::AlphaMl => {
            let p = MLParams::new(
                need("alpha", args.alpha, &mut missing),
                need("nu", args.nu, &mut missing),
                need("gamma", args.gamma, &mut missing),
            );
            Box::new(move |z| alpha_ml_with(p, z, &opts))
        }
        Function::Ml => {
            let p = MLParams::mittag_leffler(need("nu", args.nu, &mut missing), need("gamma", args.gamma, &mut missing));
            Box::new(move |z| alpha_ml_with(p, z, &opts))
        }
        Function::LeRoy => {
            let p = MLParams::le_roy(need("alpha", args.alpha, &mut missing));
            Box::new(move |z| alpha_ml_with(p, z, &opts))
        }
        Function::Wright => {
            let (a, b) = (need("a", args.a, &mut missing), need("b", args.b, &mut missing));
            Box::new(move |z| wright_with(a, b, z, &opts))
        }
        Function::GcomNormalizer => {
            let (r, nu) = (need("r", args.r, &mut missing), need("nu", args.nu, &mut missing));
            Box::new(move |z| gcom_normalizer_with(GcomNormalizerParams::new(r, nu, z), &opts))
        }
    };
    if !missing.is_empty() {
        return Err(Error::InvalidModel(missing));
    }
    let mut rows = Vec::with_capacity(points.len());
    for t in points {
        let r = eval(t)?;
        rows.push(vec![format_number(t), format_number(r.value), r.terms_used.to_string()]);
    }
    write_csv(out, &["t", "value", "terms_used"], &rows).map_err(io_error)?;
    Ok(0)
}

fn family(args: &DistArgs) -> Result<Family> {
    let mut missing = Vec::new();
    let f = match args.family {
        FamilyName::Poisson => Family::Poisson,
        FamilyName::Com => Family::ComPoisson { nu: need("nu", args.nu, &mut missing) },
        FamilyName::Fpoisson => Family::FractionalPoisson { alpha: need("alpha", args.alpha, &mut missing) },
        FamilyName::Fcom => Family::FractionalComPoisson {
            nu: need("nu", args.nu, &mut missing),
            alpha: need("alpha", args.alpha, &mut missing),
            gamma: need("gamma", args.gamma, &mut missing),
        },
        FamilyName::Gcom => Family::GcomPoisson {
            r: need("r", args.r, &mut missing),
            nu: need("nu", args.nu, &mut missing),
        },
    };
    if missing.is_empty() {
        Ok(f)
    } else {
        Err(Error::InvalidModel(missing))
    }
}

fn cmd_dist(args: &DistArgs, out: &mut dyn Write) -> Result<i32> {
    let d = CountModel::new(family(args)?, args.lambda, args.t).validate()?;
    let (header, rows): (&[&str], Vec<Vec<String>>) = match args.query {
        DistQuery::Pmf => (
            &["k", "pmf", "log_pmf"],
            (0..=args.kmax)
                .map(|k| {
                    let lp = d.log_pmf(k);
                    vec![k.to_string(), format_number(lp.exp()), format_number(lp)]
                })
                .collect(),
        ),
        DistQuery::Pgf => {
            let mut rows = Vec::new();
            for u in parse_range(&args.points)? {
                rows.push(vec![format_number(u), format_number(d.pgf(u)?)]);
            }
            (&["u", "pgf"], rows)
        }
        DistQuery::Moments => {
            let m = d.moments()?;
            (
                &["mean", "variance", "dispersion"],
                vec![vec![format_number(m.mean), format_number(m.variance), format_number(m.dispersion_index)]],
            )
        }
        DistQuery::Sample => {
            if args.count == 0 {
                return Err(Error::Domain("sample count must be >= 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let draws = d.sample(args.count, &mut rng)?;
            (&["k"], draws.into_iter().map(|k| vec![k.to_string()]).collect())
        }
    };
    write_csv(out, header, &rows).map_err(io_error)?;
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    if let Some(t) = args.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Domain(format!("tolerance must be > 0, got {t}")));
        }
    }
    let cfg = CheckConfig {
        nu: args.nu,
        lambda: args.lambda,
        t: args.t,
        r: args.r,
        alpha: args.alpha,
        n: args.n,
        beta: args.beta,
        grid: args.grid.as_deref().map(parse_grid).transpose()?,
        tolerance: args.tol,
        series: SeriesOptions::default(),
    };
    let reports = match &args.check {
        Some(id) if !args.all => run_check(id, &cfg)?,
        _ => run_all(&cfg)?,
    };
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.check_id.clone(),
                format_number(r.max_abs_residual),
                format_number(r.max_rel_residual),
                format_number(r.tolerance),
                r.passed.to_string(),
            ]
        })
        .collect();
    write_csv(out, &["check_id", "max_abs_residual", "max_rel_residual", "tolerance", "passed"], &rows)
        .map_err(io_error)?;
    Ok(if reports.iter().all(|r| r.passed) { 0 } else { 1 })
}

fn io_error(e: std::io::Error) -> Error {
    Error::Domain(format!("write failed: {e}"))
}

/// Parses `args` (including the program name) and runs the command, returning
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a, out),
        Command::Dist(a) => cmd_dist(a, out),
        Command::Verify(a) => cmd_verify(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
