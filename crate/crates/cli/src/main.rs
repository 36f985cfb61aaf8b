//! Command line front end. Exit codes: 0 all checks consistent,
//! 1 usage or configuration failure, 2 a mathematical claim was
//! violated, 3 checks ran but a certificate stayed incomplete.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Config, Field};

#[derive(Parser)]
#[command(
    name = "yosida",
    version,
    about = "Verification toolkit for operator semigroups on finite-atom random normed modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a growth envelope against the resolvent power conditions
    /// of the generation theorem.
    VerifyHy(ProblemArgs),
    /// Evaluate the equivalent renormalizations and their contraction
    /// laws for one generator stack.
    Renorm(ProblemArgs),
    /// Print exact data for the interval-indicator family that defeats
    /// the fundamental theorem of calculus.
    Counterexample(CounterexampleArgs),
    /// Export CSV curves: semigroup norms, resolvent power norms and
    /// sampled shift margins.
    Plotdata(ProblemArgs),
}

#[derive(Args)]
struct ProblemArgs {
    /// Problem description in TOML.
    #[arg(long)]
    config: PathBuf,
    /// Output directory for report and data files; falls back to the
    /// [output] section of the config.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the config seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the config tolerance.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Override the config scalar field.
    #[arg(long, value_enum)]
    field: Option<Field>,
}

impl ProblemArgs {
    fn load(&self) -> anyhow::Result<Config> {
        let mut config = Config::load(&self.config)?;
        if let Some(seed) = self.seed {
            config.seed = Some(seed);
        }
        if let Some(tolerance) = self.tolerance {
            config.tolerances.tolerance = tolerance;
        }
        if let Some(field) = self.field {
            config.field = field;
        }
        config.revalidate()?;
        Ok(config)
    }

    fn out_dir(&self, config: &Config) -> Option<PathBuf> {
        self.out
            .clone()
            .or_else(|| config.output.dir.as_ref().map(PathBuf::from))
    }
}

#[derive(Args)]
struct CounterexampleArgs {
    /// Output directory for the report file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Candidate Lipschitz bound the witness must defeat.
    #[arg(long, default_value_t = 1_000_000)]
    candidate: u64,
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::VerifyHy(args) => {
            let config = args.load()?;
            commands::verify_hy::run(&config, args.out_dir(&config))
        }
        Command::Renorm(args) => {
            let config = args.load()?;
            commands::renorm::run(&config, args.out_dir(&config))
        }
        Command::Counterexample(args) => commands::counterexample::run(args.out, args.candidate),
        Command::Plotdata(args) => {
            let config = args.load()?;
            commands::plotdata::run(&config, args.out_dir(&config))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap prints its own help/usage text.
            let _ = err.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
