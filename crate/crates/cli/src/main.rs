use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "twistlab", version, about = "Twists of finite groupoids and their certificates")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Residual tolerance for numerical certificates.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Finite truncation ℤ/N of integer-valued twists.
    #[arg(long = "truncate-N", global = true)]
    pub truncate_n: Option<i64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Check every case (the default for sweeps).
    #[arg(long, global = true, conflicts_with = "sample")]
    pub exhaustive: bool,
    /// Check `k` seeded random cases instead of all of them.
    #[arg(long, global = true)]
    pub sample: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the groupoid axioms.
    Validate { groupoid: PathBuf },
    #[command(subcommand)]
    Twist(TwistCmd),
    #[command(subcommand)]
    Cocycle(CocycleCmd),
    /// Liftable exactly when the obstruction twist is trivial, over all
    /// cocycles of a groupoid.
    Exactness {
        #[arg(long)]
        groupoid: PathBuf,
        #[arg(long)]
        seq: PathBuf,
    },
    #[command(subcommand)]
    Cstar(CstarCmd),
    #[command(subcommand)]
    Cech(CechCmd),
}

#[derive(Subcommand, Debug)]
pub enum TwistCmd {
    /// The obstruction twist of a cocycle along a sequence.
    Build {
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long)]
        seq: PathBuf,
    },
    /// Decide whether a twist has a homomorphic section.
    Trivial { twist: PathBuf },
    BaerSum { first: PathBuf, second: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum CocycleCmd {
    /// Lift a cocycle with values in C to one with values in B.
    Lift {
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long)]
        seq: PathBuf,
    },
    /// Check the cocycle identity.
    Check { cocycle: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum CstarCmd {
    /// Certify the isomorphism between the twisted algebra and the induced
    /// algebra.
    VerifyInduced {
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long)]
        seq: PathBuf,
    },
    /// Certify extension by zero from a wide subgroupoid: either an explicit
    /// embedding file, or the obstruction twist inside the product.
    EmbedCheck {
        #[arg(long, conflicts_with_all = ["cocycle", "seq"])]
        embedding: Option<PathBuf>,
        #[arg(long, requires = "seq")]
        cocycle: Option<PathBuf>,
        #[arg(long, requires = "cocycle")]
        seq: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CechInput {
    #[arg(long)]
    pub cover: PathBuf,
    /// A circle-valued 1-cochain.
    #[arg(long)]
    pub cochain: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum CechCmd {
    /// Lift a circle-valued cocycle and compute its integral obstruction.
    Obstruct(CechInput),
    Cohomology {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    XiCheck {
        #[command(flatten)]
        input: CechInput,
        #[arg(long, default_value_t = 3)]
        window: i64,
    },
    LocalUnitary(CechInput),
    DdReport(CechInput),
}

/// What a command found: whether every certificate passed, the structured
/// result, and a few human-readable lines.
pub struct Outcome {
    pub passed: bool,
    pub result: Value,
    pub summary: Vec<String>,
}

impl Outcome {
    pub fn new(passed: bool, result: impl Serialize, summary: Vec<String>) -> Self {
        Self {
            passed,
            result: serde_json::to_value(result).expect("reports serialize"),
            summary,
        }
    }
}

pub fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    twistlab_core::io::parse(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Twist(TwistCmd::Build { .. }) => "twist build",
        Command::Twist(TwistCmd::Trivial { .. }) => "twist trivial",
        Command::Twist(TwistCmd::BaerSum { .. }) => "twist baer-sum",
        Command::Cocycle(CocycleCmd::Lift { .. }) => "cocycle lift",
        Command::Cocycle(CocycleCmd::Check { .. }) => "cocycle check",
        Command::Exactness { .. } => "exactness",
        Command::Cstar(CstarCmd::VerifyInduced { .. }) => "cstar verify-induced",
        Command::Cstar(CstarCmd::EmbedCheck { .. }) => "cstar embed-check",
        Command::Cech(CechCmd::Obstruct(_)) => "cech obstruct",
        Command::Cech(CechCmd::Cohomology { .. }) => "cech cohomology",
        Command::Cech(CechCmd::XiCheck { .. }) => "cech xi-check",
        Command::Cech(CechCmd::LocalUnitary(_)) => "cech local-unitary",
        Command::Cech(CechCmd::DdReport(_)) => "cech dd-report",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.opts.tolerance.is_nan() || cli.opts.tolerance <= 0.0 {
        eprintln!("error: --tolerance must be positive");
        return ExitCode::from(2);
    }
    let name = command_name(&cli.command);
    let outcome = match commands::run(&cli.command, &cli.opts) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    match cli.opts.format {
        Format::Json => {
            let doc = json!({
                "command": name,
                "passed": outcome.passed,
                "seed": cli.opts.seed,
                "tolerance": cli.opts.tolerance,
                "result": outcome.result,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("values serialize"));
        }
        Format::Text => {
            println!("{name}: {}", if outcome.passed { "PASS" } else { "FAIL" });
            for line in &outcome.summary {
                println!("  {line}");
            }
        }
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
