//! `ddfkit`: evaluate directional technology distance functions, run property
//! suites and reproduce the paper's examples from the command line.
//!
//! Exit codes: 0 success, 1 property failure, 2 input/validation error, 3 dimension error.

mod demo;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ddfkit::ddf::DdfEvaluator;
use ddfkit::oracle::grid_ddf_detailed;
use ddfkit::{
    check_property, check_technology_property, unsymmetric_t, Bundle, DProperty, Direction, Method, PropertyReport,
    QuadraticSeparableParams, SampleConfig, TechProperty, TechnologyKind,
};

use crate::report::{CliError, RunReport};

#[derive(Parser)]
#[command(
    name = "ddfkit",
    version,
    about = "Directional technology distance functions from symmetric transformation functions"
)]
struct Cli {
    /// Print a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the DTDF (or the unsymmetric transformation function with --t-output).
    Eval(EvalArgs),
    /// Run sampled property checks (D1-D6, F1-F4, T1, T4, T5).
    Check(CheckArgs),
    /// Reproduce one of the paper's examples or figure data sets.
    Demo(DemoArgs),
}

#[derive(Args)]
struct TechArg {
    /// Technology: a JSON file, an inline JSON document, or one of the built-ins
    /// figure4, staircase, polyhedral_a, polyhedral_b.
    #[arg(long)]
    tech: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalMethod {
    Auto,
    Closed,
    Bisect,
    Grid,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    tech: TechArg,
    /// Outputs, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    y: String,
    /// Inputs, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    /// Output direction, comma separated (required unless --t-output is given).
    #[arg(long, allow_hyphen_values = true)]
    gy: Option<String>,
    /// Input direction, comma separated (required unless --t-output is given).
    #[arg(long, allow_hyphen_values = true)]
    gx: Option<String>,
    #[arg(long, value_enum, default_value_t = EvalMethod::Auto)]
    method: EvalMethod,
    /// Grid step for --method grid.
    #[arg(long, default_value_t = 1e-4)]
    step: f64,
    /// Evaluate t(y^{-i}, x) for output i (1-based, as in the paper) instead of the DTDF.
    #[arg(long)]
    t_output: Option<usize>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    tech: TechArg,
    /// Comma-separated properties (D1..D6, F1..F4, T1, T4, T5); default: all of D1..D6.
    #[arg(long)]
    props: Option<String>,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, env = "DDFKIT_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum DemoName {
    QuadraticHomogeneity,
    #[value(name = "example-2-1-6")]
    Example216,
    #[value(name = "example-2-1-9")]
    Example219,
    Staircase,
    FigureData,
}

#[derive(Args)]
struct DemoArgs {
    #[arg(value_enum)]
    name: DemoName,
    /// Directory for CSV output (figure-data).
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long, env = "DDFKIT_SEED", default_value_t = 0)]
    seed: u64,
}

fn load_technology(spec: &str) -> Result<TechnologyKind, CliError> {
    let builtin = match spec {
        "figure4" => Some(TechnologyKind::QuadraticSeparable(QuadraticSeparableParams::figure4())),
        "staircase" => Some(TechnologyKind::Staircase),
        "polyhedral_a" => Some(TechnologyKind::PolyhedralA),
        "polyhedral_b" => Some(TechnologyKind::PolyhedralB),
        _ => None,
    };
    if let Some(tech) = builtin {
        return Ok(tech);
    }
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        std::fs::read_to_string(spec)
            .map_err(|e| CliError::input(format!("cannot read technology file {spec}: {e}")))?
    };
    Ok(TechnologyKind::from_json(&text)?)
}

fn parse_vector(name: &str, text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|part| {
            let part = part.trim();
            f64::from_str(part).map_err(|_| CliError::input(format!("--{name}: {part:?} is not a number")))
        })
        .collect()
}

fn validated(tech: TechnologyKind) -> Result<TechnologyKind, CliError> {
    tech.validate().into_result()?;
    Ok(tech)
}

fn cmd_eval(args: &EvalArgs) -> Result<(Value, Vec<String>, bool), CliError> {
    let tech = validated(load_technology(&args.tech.tech)?)?;
    let bundle = Bundle::new(parse_vector("y", &args.y)?, parse_vector("x", &args.x)?)?;
    tech.check_bundle(&bundle)?;

    if let Some(i) = args.t_output {
        if i == 0 {
            return Err(CliError::input("--t-output is 1-based".into()));
        }
        let t = unsymmetric_t(&tech, i - 1, &bundle)?;
        let lines = vec![format!("t(y^-{i}, x): {t}")];
        return Ok((
            json!({"quantity": "unsymmetric_t", "output": i, "value": t}),
            lines,
            true,
        ));
    }

    let (Some(gy), Some(gx)) = (&args.gy, &args.gx) else {
        return Err(CliError::input(
            "--gy and --gx are required unless --t-output is given".into(),
        ));
    };
    let dir = Direction::new(parse_vector("gy", gy)?, parse_vector("gx", gx)?)?;
    let method = match args.method {
        EvalMethod::Grid => {
            let g = grid_ddf_detailed(&tech, &bundle, &dir, args.step)?;
            let lines = vec![
                format!("value: {}", g.value),
                "method: grid".to_string(),
                format!("step: {}", args.step),
                format!(
                    "scanned: [{}, {}]{}",
                    g.lower,
                    g.upper,
                    if g.truncated { " (truncated)" } else { "" }
                ),
            ];
            let payload = json!({
                "quantity": "ddf", "value": g.value, "method": "grid", "step": args.step,
                "truncated": g.truncated, "scanned": [g.lower, g.upper], "evaluations": g.evaluations,
            });
            return Ok((payload, lines, true));
        }
        EvalMethod::Auto => Method::Auto,
        EvalMethod::Closed => Method::Closed,
        EvalMethod::Bisect => Method::Bisect,
    };
    let eval = DdfEvaluator::new(&tech)?.evaluate(&bundle, &dir, method)?;
    let mut lines = vec![format!("value: {}", eval.value), format!("method: {}", eval.method)];
    if eval.method == Method::Bisect {
        lines.push(format!("iterations: {}", eval.iterations));
    }
    lines.push(format!(
        "lambda: {}",
        serde_json::to_value(eval.lambda).unwrap_or(Value::Null)
    ));
    if eval.exhausted {
        lines.push("note: downward bracket search exhausted; Lambda declared empty".to_string());
    }
    let mut payload = serde_json::to_value(&eval).expect("evaluation serialises");
    payload["quantity"] = json!("ddf");
    Ok((payload, lines, true))
}

enum AnyProperty {
    D(DProperty),
    Tech(TechProperty),
}

fn parse_property(name: &str) -> Result<AnyProperty, CliError> {
    DProperty::from_str(name)
        .map(AnyProperty::D)
        .or_else(|_| TechProperty::from_str(name).map(AnyProperty::Tech))
        .map_err(|_| CliError::input(format!("unknown property {name:?}")))
}

fn cmd_check(args: &CheckArgs) -> Result<(Value, Vec<String>, bool), CliError> {
    let tech = load_technology(&args.tech.tech)?;
    let props: Vec<AnyProperty> = match &args.props {
        None => DProperty::ALL.into_iter().map(AnyProperty::D).collect(),
        Some(list) => list
            .split(',')
            .map(|p| parse_property(p.trim()))
            .collect::<Result<_, _>>()?,
    };
    let needs_quadratic = props.iter().any(|p| match p {
        AnyProperty::D(_) => true,
        AnyProperty::Tech(t) => t.requires_quadratic(),
    });
    if needs_quadratic && tech.quadratic().is_none() {
        return Err(CliError::input(format!(
            "property checks need a quadratic_separable technology (D1-D6 and F1-F4 are theorems only under F1-F4), got {}",
            tech.name()
        )));
    }
    let tech = validated(tech)?;
    let config = SampleConfig::new(args.samples, args.seed);
    let reports: Vec<PropertyReport> = props
        .iter()
        .map(|p| match p {
            AnyProperty::D(d) => check_property(&tech, *d, config),
            AnyProperty::Tech(t) => check_technology_property(&tech, *t, config),
        })
        .collect::<Result<_, _>>()?;
    let passed = reports.iter().all(|r| r.passed);
    let lines = reports
        .iter()
        .map(|r| {
            format!(
                "{}: {} (worst violation {:e}, tolerance {:e}, checked {}/{})",
                r.property,
                if r.passed { "pass" } else { "FAIL" },
                r.worst_violation,
                r.tolerance,
                r.checked,
                r.samples
            )
        })
        .collect();
    Ok((
        json!({"technology": tech.to_json(), "properties": reports}),
        lines,
        passed,
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let (seed, outcome) = match &cli.command {
        Command::Eval(args) => (None, cmd_eval(args)),
        Command::Check(args) => (Some(args.seed), cmd_check(args)),
        Command::Demo(args) => (Some(args.seed), demo::run(args.name, &args.out, args.seed)),
    };
    let elapsed = start.elapsed().as_secs_f64();
    match outcome {
        Ok((results, lines, passed)) => {
            let report = RunReport::new(command, seed, results, passed, elapsed);
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serialises"));
            } else {
                for line in lines {
                    println!("{line}");
                }
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {}", err.message);
            if cli.json {
                let report = RunReport::error(command, seed, &err, elapsed);
                println!("{}", serde_json::to_string_pretty(&report).expect("report serialises"));
            }
            ExitCode::from(err.code)
        }
    }
}
