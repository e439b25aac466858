use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tfgauss::error::Error;
use tfgauss::run::{run, RunOptions, Subcommand as Cmd};

/// Batch experiments on weighted time-frequency spaces: weight checks,
/// transforms, operator families, dictionary approximation and the
/// completeness witness.
#[derive(Parser)]
#[command(name = "tfgauss", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct CommonArgs {
    /// Experiment config (TOML)
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides [outputs].dir)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run even if the weight pair fails the space hypotheses
    #[arg(long)]
    force: bool,
    /// Worker threads for the parallel reductions
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Seed for probe vectors
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Non-degeneracy and regularity reports for the weight pair
    CheckWeights(CommonArgs),
    /// Forward transform of the target with round-trip and Parseval checks
    Transform(CommonArgs),
    /// Mollifier error/bound curves along the alpha schedule
    Mollify(CommonArgs),
    /// Dictionary least squares and greedy pursuit on the target
    Approximate(CommonArgs),
    /// Completeness witness curves with Schur probe diagnostics
    Witness(CommonArgs),
    /// Generalized-window admissibility conditions
    CheckWindow(CommonArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, args) = match cli.command {
        Command::CheckWeights(a) => (Cmd::CheckWeights, a),
        Command::Transform(a) => (Cmd::Transform, a),
        Command::Mollify(a) => (Cmd::Mollify, a),
        Command::Approximate(a) => (Cmd::Approximate, a),
        Command::Witness(a) => (Cmd::Witness, a),
        Command::CheckWindow(a) => (Cmd::CheckWindow, a),
    };

    let threads = args.threads.max(1);
    // a failure here just means a pool already exists (e.g. tests)
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();

    let opts = RunOptions {
        config_path: args.config,
        subcommand: cmd,
        out_override: args.out,
        force: args.force,
        threads,
        seed: args.seed,
    };
    match run(&opts) {
        Ok(outputs) => {
            for path in outputs {
                println!("wrote {}", path.display());
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Validation { .. } | Error::Config { .. } | Error::InvalidParameter { .. } => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}
