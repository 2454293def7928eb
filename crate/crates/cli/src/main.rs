use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qlogic::interference::{max_abs, search_i2, sweep_i2, sweep_i3, I3_TOL};
use qlogic::spin::{normalized, verify_lift, verify_nonuniqueness, CounterexampleConfig};
use qlogic::suite::{emit_report, run_postulate_suite, Format, SuiteConfig, DEFAULT_SAMPLES, DEFAULT_SEED};
use qlogic::{Algebra, AlgebraDescriptor, Error, ParseError};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "qlogic", version, about = "Numerical checks for Jordan-algebraic quantum logics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the postulate suite against an algebra.
    Check(CheckArgs),
    /// Construct a non-unique conditioning counterexample.
    #[command(subcommand)]
    Counterexample(CounterexampleKind),
    /// Measure second- or third-order interference.
    Interference(InterferenceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Text => Format::Text,
        }
    }
}

#[derive(Args)]
struct SeedArg {
    /// Master seed.
    #[arg(long, env = "QLOGIC_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct CheckArgs {
    /// Algebra such as "C(3) + spin(4) + O3".
    #[arg(long)]
    algebra: String,
    /// Samples per check.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[command(flatten)]
    seed: SeedArg,
    /// Threshold override, e.g. C.symmetry=1e-12. Repeatable.
    #[arg(long = "tol-override", value_name = "NAME=VALUE", value_parser = parse_override)]
    tol_override: Vec<(String, f64)>,
    /// Comma-separated checks or categories (A, B, C, D, lattice, spectral, counterexample).
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    only: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Record wall time per check (makes output nondeterministic).
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum CounterexampleKind {
    /// Two states on spin(n) agreeing on a certain atom.
    Spin(SpinArgs),
}

#[derive(Args)]
struct SpinArgs {
    /// Dimension of the spin factor.
    #[arg(long)]
    n: usize,
    /// Direction of the certain atom (comma-separated, normalized); defaults to e_n.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    u0: Option<Vec<f64>>,
    /// Direction of the perturbed atom (comma-separated, normalized); defaults to e_1.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    u1: Option<Vec<f64>>,
    /// New value at the perturbed atom.
    #[arg(long, default_value_t = qlogic::spin::DEFAULT_VALUE)]
    value: f64,
    /// Sampled directions for the state and least-squares checks.
    #[arg(long, default_value_t = qlogic::spin::DEFAULT_DIRECTION_SAMPLES)]
    samples: usize,
    #[command(flatten)]
    seed: SeedArg,
    /// Direct sum to lift into; its first summand must be spin(n). Defaults to "spin(n) + R(2)".
    #[arg(long)]
    lift: Option<String>,
}

#[derive(Args)]
struct InterferenceArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
    order: u8,
    /// Report the largest |I2| over pure-state configurations.
    #[arg(long)]
    search: bool,
    /// Number of configurations.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[command(flatten)]
    seed: SeedArg,
}

fn parse_override(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got `{s}`"))?;
    let value: f64 = value.trim().parse().map_err(|e| format!("bad value in `{s}`: {e}"))?;
    Ok((name.trim().to_string(), value))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::InvalidArgument(_) | Error::InvalidDescriptor(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

fn report_error(e: &Error, spec: Option<&str>) -> ExitCode {
    eprintln!("error: {e}");
    if let (Error::Parse(p), Some(spec)) = (e, spec) {
        eprintln!("  {spec}");
        eprintln!("  {}^", " ".repeat(caret_column(spec, p)));
    }
    ExitCode::from(exit_code(e))
}

fn caret_column(spec: &str, p: &ParseError) -> usize {
    spec.get(..p.offset().min(spec.len())).map_or(0, |s| s.chars().count())
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("value serializes"));
}

fn run_check(args: CheckArgs) -> Result<ExitCode, Error> {
    let config = SuiteConfig {
        spec: args.algebra,
        samples: args.samples,
        seed: args.seed.seed,
        tolerances: args.tol_override.into_iter().collect::<BTreeMap<_, _>>(),
        only: args.only.map(|items| {
            items.into_iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
        }),
        timings: args.timings,
    };
    let report = run_postulate_suite(&config)?;
    print!("{}", emit_report(&report, args.format.into()));
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("check {} failed: residual {:e} > threshold {:e}", c.name, c.residual, c.threshold);
    }
    Ok(ExitCode::from(if report.passed { 0 } else { EXIT_FAIL }))
}

fn run_counterexample(args: SpinArgs) -> Result<ExitCode, Error> {
    let mut config = CounterexampleConfig::new(args.n);
    config.u0 = args.u0.as_deref().map(normalized).transpose()?;
    config.u1 = args.u1.as_deref().map(normalized).transpose()?;
    config.value = args.value;
    config.samples = args.samples;
    config.seed = args.seed.seed;
    let report = verify_nonuniqueness(&config)?;

    let spec = args.lift.unwrap_or_else(|| format!("spin({}) + R(2)", args.n));
    let algebra = Algebra::new(spec.parse::<AlgebraDescriptor>()?)?;
    let lift = verify_lift(&algebra, 0, &config, 10)?;

    let passed = report.passed() && lift.passed();
    print_json(&json!({ "counterexample": report, "lift": lift, "passed": passed }));
    if !passed {
        eprintln!("no counterexample: gap {} , density-fit residual {:e}", report.deviation, report.nu_fit_residual);
    }
    Ok(ExitCode::from(if passed { 0 } else { EXIT_FAIL }))
}

fn run_interference(args: InterferenceArgs) -> Result<ExitCode, Error> {
    let algebra = Algebra::new(args.algebra.parse::<AlgebraDescriptor>()?)?;
    let spec = algebra.descriptor().to_string();
    let seed = args.seed.seed;
    match (args.order, args.search) {
        (3, _) => {
            let reports = sweep_i3(&algebra, args.samples, seed)?;
            let max = max_abs(&reports);
            let vanishes = reports.iter().all(|r| r.vanishes);
            print_json(&json!({
                "spec": spec, "order": 3, "seed": seed, "configs": reports.len(),
                "max_abs": max, "tolerance": I3_TOL, "vanishes": vanishes,
            }));
            Ok(ExitCode::from(if vanishes { 0 } else { EXIT_FAIL }))
        }
        (_, true) => {
            let best = search_i2(&algebra, args.samples, seed)?;
            print_json(&json!({
                "spec": spec, "order": 2, "seed": seed, "configs": args.samples,
                "max_abs": best.value.abs(), "best": best,
            }));
            Ok(ExitCode::SUCCESS)
        }
        (_, false) => {
            let reports = sweep_i2(&algebra, args.samples, seed)?;
            print_json(&json!({
                "spec": spec, "order": 2, "seed": seed, "configs": reports.len(),
                "max_abs": max_abs(&reports),
            }));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, spec) = match cli.command {
        Command::Check(args) => {
            let spec = args.algebra.clone();
            (run_check(args), Some(spec))
        }
        Command::Counterexample(CounterexampleKind::Spin(args)) => {
            let spec = args.lift.clone();
            (run_counterexample(args), spec)
        }
        Command::Interference(args) => {
            let spec = args.algebra.clone();
            (run_interference(args), Some(spec))
        }
    };
    result.unwrap_or_else(|e| report_error(&e, spec.as_deref()))
}
