//! `eds`: exact exterior differential systems — Cartan character tables,
//! closure verification, and the built-in gauge-theory reference tables.

use clap::{Args, Parser, Subcommand, ValueEnum};
use eds_cli::commands::{
    self, CommandOutput, Failure, ModelChoice, OutputFormat, RunConfig, Signature, Table1Config,
};
use eds_cli::exit_code;
use eds_core::cartan::PointMode;
use eds_core::models::Family;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "eds",
    version,
    about = "Exact Cartan character tables for exterior differential systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Cartan character table of a model or .eds file
    Chars(CharsArgs),
    /// Run closure certificates, symbolic identities, and pointwise checks
    Verify(VerifyArgs),
    /// Compute all eight built-in reference tables (both families, n = 3..6)
    Table1(Table1Args),
    /// List the built-in model families
    Models,
}

#[derive(Args)]
struct ModelArgs {
    /// Built-in family: maxwell | su2ym | contact
    #[arg(long, conflicts_with = "eds")]
    model: Option<String>,
    /// Spacetime dimension n for the gauge families
    #[arg(long, requires = "model")]
    n: Option<usize>,
    /// Path to a .eds system file
    #[arg(long, value_name = "PATH")]
    eds: Option<PathBuf>,
}

#[derive(Args)]
struct CommonArgs {
    /// Base seed; trial i uses seed + i
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Number of independent trials
    #[arg(long, default_value_t = 3)]
    trials: usize,
    /// Random integer components are drawn from [-range, range]
    #[arg(long, default_value_t = 10)]
    range: i64,
    /// Cross-check every polar rank against 3 random 20+ bit primes
    #[arg(long, default_value_t = false)]
    modular_check: bool,
    /// Metric signature convention
    #[arg(long, value_enum, default_value_t = SignatureArg::MostlyPlus)]
    signature: SignatureArg,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Basis-size budget for pointwise ideal computations
    #[arg(long, default_value_t = 500_000)]
    budget: u64,
    /// Point sampling: random integers or the first primes
    #[arg(long, value_enum, default_value_t = PointModeArg::RandomInt)]
    point_mode: PointModeArg,
}

#[derive(Args)]
struct CharsArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct Table1Args {
    /// Base seed; trial i uses seed + i
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Independent trials per row
    #[arg(long, default_value_t = 3)]
    trials: usize,
    /// Random integer range
    #[arg(long, default_value_t = 10)]
    range: i64,
    /// Metric signature convention
    #[arg(long, value_enum, default_value_t = SignatureArg::MostlyPlus)]
    signature: SignatureArg,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignatureArg {
    MostlyPlus,
    MostlyMinus,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PointModeArg {
    RandomInt,
    Primes,
}

impl From<SignatureArg> for Signature {
    fn from(v: SignatureArg) -> Self {
        match v {
            SignatureArg::MostlyPlus => Signature::MostlyPlus,
            SignatureArg::MostlyMinus => Signature::MostlyMinus,
        }
    }
}

impl From<FormatArg> for OutputFormat {
    fn from(v: FormatArg) -> Self {
        match v {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

impl From<PointModeArg> for PointMode {
    fn from(v: PointModeArg) -> Self {
        match v {
            PointModeArg::RandomInt => PointMode::RandomInt,
            PointModeArg::Primes => PointMode::Primes,
        }
    }
}

fn model_choice(args: &ModelArgs) -> Result<ModelChoice, Failure> {
    if let Some(path) = &args.eds {
        return Ok(ModelChoice::File(path.clone()));
    }
    let Some(key) = &args.model else {
        return Err(Failure {
            exit: exit_code::MODEL,
            message: "select a model with --model FAMILY --n N or --eds PATH".into(),
        });
    };
    let Some(family) = Family::from_key(key) else {
        return Err(Failure {
            exit: exit_code::MODEL,
            message: format!(
                "unknown family `{key}`; known: {}",
                eds_core::models::registry()
                    .iter()
                    .map(|m| m.key)
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        });
    };
    let n = match family {
        Family::Contact => args.n.unwrap_or(2),
        _ => args.n.ok_or_else(|| Failure {
            exit: exit_code::MODEL,
            message: format!("--model {key} needs --n N (n >= 3)"),
        })?,
    };
    Ok(ModelChoice::Builtin { family, n })
}

fn run_config(model: &ModelArgs, common: &CommonArgs) -> Result<RunConfig, Failure> {
    if common.trials == 0 {
        return Err(Failure {
            exit: exit_code::MODEL,
            message: "--trials must be at least 1".into(),
        });
    }
    Ok(RunConfig {
        choice: model_choice(model)?,
        seed: common.seed,
        trials: common.trials,
        range: common.range,
        modular_check: common.modular_check,
        signature: common.signature.into(),
        point_mode: common.point_mode.into(),
        budget: common.budget,
        format: common.format.into(),
    })
}

fn finish(result: Result<CommandOutput, Failure>, format: OutputFormat) -> ExitCode {
    match result {
        Ok(output) => {
            print!("{}", commands::render(&output, format));
            if format == OutputFormat::Json {
                println!();
            }
            ExitCode::from(output.exit as u8)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.exit as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Chars(args) => {
            let format: OutputFormat = args.common.format.into();
            finish(
                run_config(&args.model, &args.common).and_then(|cfg| commands::cmd_chars(&cfg)),
                format,
            )
        }
        Command::Verify(args) => {
            let format: OutputFormat = args.common.format.into();
            finish(
                run_config(&args.model, &args.common).and_then(|cfg| commands::cmd_verify(&cfg)),
                format,
            )
        }
        Command::Table1(args) => {
            let format: OutputFormat = args.format.into();
            let cfg = Table1Config {
                seed: args.seed,
                trials: args.trials.max(1),
                range: args.range,
                signature: args.signature.into(),
                format,
            };
            finish(commands::cmd_table1(&cfg), format)
        }
        Command::Models => {
            for m in eds_core::models::registry() {
                let reference = match m.reference_max_n {
                    Some(max) => format!("reference tables for n = {}..{max}", m.min_n),
                    None => "no reference tables".into(),
                };
                println!("{:<8} {} ({reference})", m.key, m.description);
            }
            ExitCode::SUCCESS
        }
    }
}
