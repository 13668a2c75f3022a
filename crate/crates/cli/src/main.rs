use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use holonomy_core::experiment::{self, ExperimentConfig, RunOptions, RunOutput, ScheduleChoice};
use holonomy_core::Error;

#[derive(Parser)]
#[command(name = "holonomy-lab", version, about = "Holonomic gate pulse synthesis and benchmarking")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured scenario.
    Run(Common),
    /// Run the configured rate sweep.
    Sweep(Common),
    /// Write the pulse schedules for the configured gates.
    Synth(Common),
    /// Check a config and report every problem.
    Validate { config: PathBuf },
}

#[derive(Args)]
struct Common {
    /// JSON experiment config.
    config: PathBuf,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Output directory, overriding `output_dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// fixed-rate, fixed-amplitude or both.
    #[arg(long)]
    schedule: Option<String>,
}

const EXIT_INVALID: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;

fn load(path: &PathBuf) -> Result<ExperimentConfig, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Validation(vec![format!("cannot read {}: {e}", path.display())]))?;
    experiment::validate_config(&text)
}

fn prepare(args: &Common) -> Result<ExperimentConfig, Error> {
    let mut config = load(&args.config)?;
    if let Some(name) = &args.schedule {
        config.schedule = ScheduleChoice::parse(name).ok_or_else(|| {
            Error::Validation(vec![format!("--schedule: unknown '{name}' (fixed-rate, fixed-amplitude or both)")])
        })?;
    }
    if let Some(dir) = &args.out {
        config.output_dir = dir.clone();
    }
    if args.jobs == Some(0) {
        return Err(Error::Validation(vec!["--jobs must be at least 1".into()]));
    }
    Ok(config)
}

fn report(out: &RunOutput) -> ExitCode {
    for f in &out.files {
        println!("wrote {}", f.display());
    }
    let failed = out.failed_rows();
    if failed > 0 {
        eprintln!("{failed} row(s) marked failed");
        return ExitCode::from(EXIT_NUMERICAL);
    }
    ExitCode::SUCCESS
}

fn fail(err: Error) -> ExitCode {
    eprintln!("error: {err}");
    match err {
        Error::Validation(_) | Error::RejectedInput(_) => ExitCode::from(EXIT_INVALID),
        _ => ExitCode::from(EXIT_NUMERICAL),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { config } => match load(config) {
            Ok(cfg) => {
                let scenario = cfg.scenario.map_or("?", |s| s.name());
                println!("ok: scenario {scenario}");
                return ExitCode::SUCCESS;
            }
            Err(e) => Err(e),
        },
        Command::Run(args) | Command::Sweep(args) | Command::Synth(args) => prepare(args).and_then(|config| {
            let opts = RunOptions { jobs: args.jobs, dry: false };
            match &cli.command {
                Command::Run(_) => experiment::run(&config, &opts),
                Command::Sweep(_) => experiment::sweep(&config, &opts),
                _ => experiment::synth(&config, &opts),
            }
        }),
    };
    match result {
        Ok(out) => report(&out),
        Err(e) => fail(e),
    }
}
