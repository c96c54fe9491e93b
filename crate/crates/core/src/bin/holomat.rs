use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use holomat::cli::{self, Command, RunConfig, EXIT_USAGE};
use holomat::structure::Tolerances;

#[derive(Parser)]
#[command(name = "holomat", version, about = "Classify holomorphic maps between matrix algebras")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the classification pipeline.
    Classify(Opts),
    /// Run the orthogonality testers.
    Test(Opts),
    /// Extract Taylor components and their linearizations.
    Extract(Opts),
    /// Check a gallery entry's expected behavior (`all` for every entry).
    Gallery(Opts),
}

#[derive(Args)]
struct Opts {
    /// Spec file, or gallery name such as `embed-k2:3`.
    input: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = holomat::holo::DEFAULT_N_MAX)]
    nmax: usize,
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long, default_value_t = holomat::ortho::DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long)]
    tol_construct: Option<f64>,
    #[arg(long)]
    tol_verify: Option<f64>,
    #[arg(long)]
    tol_decide: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let parsed = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let (command, opts) = match parsed.command {
        Cmd::Classify(o) => (Command::Classify, o),
        Cmd::Test(o) => (Command::Test, o),
        Cmd::Extract(o) => (Command::Extract, o),
        Cmd::Gallery(o) => (Command::Gallery, o),
    };
    let defaults = Tolerances::default();
    let config = RunConfig {
        command,
        input: opts.input,
        seed: opts.seed,
        n_max: opts.nmax,
        nodes: opts.nodes,
        trials: opts.trials,
        tolerances: Tolerances {
            construct: opts.tol_construct.unwrap_or(defaults.construct),
            verify: opts.tol_verify.unwrap_or(defaults.verify),
            decide: opts.tol_decide.unwrap_or(defaults.decide),
        },
        out: opts.out,
    };
    let output = cli::run(&config);
    if config.out.is_none() {
        let _ = std::io::stdout().write_all(output.report.as_bytes());
    }
    ExitCode::from(output.exit_code as u8)
}
