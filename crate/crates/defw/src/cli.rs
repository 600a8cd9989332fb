//! The `defw` command line: thin argument handling over the report builders.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::context::{DefwError, JetOrder, Variant};
use crate::element::Rat;
use crate::report::{
    cmd_cohomology, cmd_invariants_check, cmd_invariants_eval, cmd_report_section10, cmd_verify,
    OutputFormat, ReportRecord, RunConfig,
};

#[derive(Parser)]
#[command(
    name = "defw",
    version,
    about = "Exact cohomology of deformation algebras of foliations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions and bases of cohomology pieces over a bidegree grid
    Cohomology(CohomologyArgs),
    /// Run the property suites; exit status 1 if anything fails
    Verify(VerifyArgs),
    /// The codimension-one order <= 5 classification report
    #[command(name = "report-section10")]
    ReportSection10(ReportArgs),
    /// Invariant polynomials of the block Toeplitz jet groups
    Invariants(InvariantsArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Codimension
    #[arg(long, default_value_t = 1)]
    q: u32,
    /// Jet order bound: a number or "inf"
    #[arg(long, default_value = "inf", value_parser = parse_jet_order)]
    r: JetOrder,
    /// Quotient variant
    #[arg(long, default_value = "W", value_parser = parse_variant)]
    variant: Variant,
    /// Degree grid: "N" or "A..B"
    #[arg(long, default_value = "0..8", value_parser = parse_range)]
    degree: (u32, u32),
    /// Order grid: "N" or "A..B"
    #[arg(long, default_value = "0..5", value_parser = parse_range)]
    order: (u32, u32),
    /// Seed for randomized suites
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output format
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: OutputFormat,
    /// Output path; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CohomologyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Restrict to the lambda-eigenspace of delta∘sigma (rational, "p/q")
    #[arg(long = "f-lambda", value_parser = parse_rational)]
    f_lambda: Option<Rat>,
    /// Restrict to one type "a,b"
    #[arg(long = "type", value_parser = parse_type)]
    ty: Option<(u32, u32)>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Randomized trials per identity
    #[arg(long, default_value_t = 500)]
    trials: u32,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct InvariantsArgs {
    #[command(subcommand)]
    action: InvariantsAction,
}

#[derive(Subcommand)]
enum InvariantsAction {
    /// Randomized exact invariance trials
    Check {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of conjugation trials
        #[arg(long, default_value_t = 100)]
        trials: u32,
    },
    /// Evaluate the invariants on a seeded random sample matrix
    Eval {
        #[command(flatten)]
        common: CommonArgs,
        /// Chern index (1..=q)
        #[arg(long)]
        k: u32,
        /// Derivative order (0..=r)
        #[arg(long)]
        l: u32,
    },
}

fn parse_jet_order(s: &str) -> Result<JetOrder, String> {
    if s == "inf" {
        return Ok(JetOrder::Unbounded);
    }
    s.parse::<u32>()
        .map(JetOrder::Finite)
        .map_err(|_| format!("expected a number or \"inf\", got {s}"))
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    match s {
        "W" => Ok(Variant::W),
        "Wprime" => Ok(Variant::WPrime),
        "Wplus" => Ok(Variant::WPlus),
        "free" => Ok(Variant::Free),
        _ => Err(format!(
            "unknown variant {s}; expected W, Wprime, Wplus or free"
        )),
    }
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    if let Some((a, b)) = s.split_once("..") {
        let a: u32 = a.parse().map_err(|_| format!("bad range start {a}"))?;
        let b: u32 = b.parse().map_err(|_| format!("bad range end {b}"))?;
        if a > b {
            return Err(format!("empty range {s}"));
        }
        Ok((a, b))
    } else {
        let n: u32 = s.parse().map_err(|_| format!("bad value {s}"))?;
        Ok((n, n))
    }
}

fn parse_rational(s: &str) -> Result<Rat, String> {
    let parse_int = |t: &str| -> Result<num_bigint::BigInt, String> {
        t.parse().map_err(|_| format!("bad integer {t}"))
    };
    if let Some((n, d)) = s.split_once('/') {
        let d = parse_int(d)?;
        if d == num_bigint::BigInt::from(0) {
            return Err("zero denominator".into());
        }
        Ok(Rat::new(parse_int(n)?, d))
    } else {
        Ok(Rat::from_integer(parse_int(s)?))
    }
}

fn parse_type(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"a,b\", got {s}"))?;
    Ok((
        a.trim()
            .parse()
            .map_err(|_| format!("bad type component {a}"))?,
        b.trim()
            .parse()
            .map_err(|_| format!("bad type component {b}"))?,
    ))
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    match s {
        "json" => Ok(OutputFormat::Json),
        "md" | "markdown" => Ok(OutputFormat::Markdown),
        "tsv" => Ok(OutputFormat::Tsv),
        _ => Err(format!("unknown format {s}; expected json, md or tsv")),
    }
}

fn run_config(common: &CommonArgs, trials: u32) -> RunConfig {
    RunConfig {
        q: common.q,
        r: common.r,
        variant: common.variant,
        degrees: common.degree,
        orders: common.order,
        lambda: None,
        ty: None,
        seed: common.seed,
        trials,
    }
}

fn emit(record: &ReportRecord, common: &CommonArgs, started: Instant) -> Result<(), DefwError> {
    let rendered = record.render(common.format);
    match &common.out {
        None => {
            print!("{rendered}");
            std::io::stdout().flush().ok();
        }
        Some(path) => {
            std::fs::write(path, rendered).map_err(|e| {
                DefwError::Validation(format!("cannot write {}: {e}", path.display()))
            })?;
        }
    }
    eprintln!("# {} finished in {:.3?}", record.command, started.elapsed());
    Ok(())
}

/// Entry point; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome: Result<i32, DefwError> = match &cli.command {
        Command::Cohomology(args) => {
            let mut cfg = run_config(&args.common, 0);
            cfg.lambda = args.f_lambda.clone();
            cfg.ty = args.ty;
            cmd_cohomology(&cfg).and_then(|rec| emit(&rec, &args.common, started).map(|_| 0))
        }
        Command::Verify(args) => {
            let cfg = run_config(&args.common, args.trials);
            cmd_verify(&cfg).and_then(|rec| {
                let all = rec.payload["all_passed"].as_bool().unwrap_or(false);
                emit(&rec, &args.common, started)?;
                Ok(if all { 0 } else { 1 })
            })
        }
        Command::ReportSection10(args) => {
            let cfg = run_config(&args.common, 0);
            cmd_report_section10(&cfg).and_then(|rec| emit(&rec, &args.common, started).map(|_| 0))
        }
        Command::Invariants(args) => match &args.action {
            InvariantsAction::Check { common, trials } => {
                let cfg = run_config(common, *trials);
                cmd_invariants_check(&cfg).and_then(|rec| {
                    let all = rec.payload["all_passed"].as_bool().unwrap_or(false);
                    emit(&rec, common, started)?;
                    Ok(if all { 0 } else { 1 })
                })
            }
            InvariantsAction::Eval { common, k, l } => {
                let cfg = run_config(common, 0);
                cmd_invariants_eval(&cfg, *k, *l)
                    .and_then(|rec| emit(&rec, common, started).map(|_| 0))
            }
        },
    };
    match outcome {
        Ok(code) => code,
        Err(DefwError::Validation(msg)) | Err(DefwError::Parse(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
