use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use l1fixed_cli::report::to_json_string;
use l1fixed_cli::{run_scenario, run_suite, summary_table, Overrides, Status, Task};

/// Chebyshev centres, invariant points and cocycle trivialization on L1-type spaces.
#[derive(Parser)]
#[command(name = "l1fixed", version)]
struct Cli {
    /// Seed for randomized solvers.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Tolerance for membership checks and expectations.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Maximum group order during closure.
    #[arg(long, global = true)]
    max_group: Option<usize>,
    /// Subgradient iterations for non-polyhedral spaces.
    #[arg(long, global = true)]
    iters: Option<usize>,
    /// Also write the JSON report (or, for `check`, all reports) here.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Circumradius of the scenario's point set.
    Radius { scenario: PathBuf },
    /// Chebyshev centre of the scenario's point set.
    Centre { scenario: PathBuf },
    /// Group-invariant centre.
    FixedPoint { scenario: PathBuf },
    /// Trivialize a cocycle with the norm bound.
    Trivialize { scenario: PathBuf },
    /// Write a derivation as an inner derivation.
    Derivation { scenario: PathBuf },
    /// Centre of a set inside a direct sum with an extra summand.
    EmbeddedCentre { scenario: PathBuf },
    /// Run every scenario in a directory.
    Check {
        dir: PathBuf,
        /// Glob for scenario file names.
        #[arg(long)]
        filter: Option<String>,
    },
}

fn write_report(path: &Path, body: &str) -> Result<(), ExitCode> {
    std::fs::write(path, body).map_err(|e| {
        eprintln!("cannot write {}: {e}", path.display());
        ExitCode::from(Status::InputError.exit_code() as u8)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut overrides =
        Overrides { task: None, seed: cli.seed, tol: cli.tol, max_group: cli.max_group, iters: cli.iters };
    let single = |task: Task, path: &PathBuf, overrides: &mut Overrides| {
        overrides.task = Some(task);
        let report = run_scenario(path, overrides);
        let body = report.to_json();
        print!("{body}");
        if let Some(msg) = &report.message {
            eprintln!("{}: {msg}", report.status.as_str());
        }
        if let Some(p) = &cli.report {
            if let Err(code) = write_report(p, &body) {
                return code;
            }
        }
        ExitCode::from(report.status.exit_code() as u8)
    };
    match &cli.command {
        Command::Radius { scenario } => single(Task::Radius, scenario, &mut overrides),
        Command::Centre { scenario } => single(Task::Centre, scenario, &mut overrides),
        Command::FixedPoint { scenario } => single(Task::FixedPoint, scenario, &mut overrides),
        Command::Trivialize { scenario } => single(Task::Trivialize, scenario, &mut overrides),
        Command::Derivation { scenario } => single(Task::Derivation, scenario, &mut overrides),
        Command::EmbeddedCentre { scenario } => single(Task::EmbeddedCentre, scenario, &mut overrides),
        Command::Check { dir, filter } => match run_suite(dir, filter.as_deref(), &overrides) {
            Ok(outcome) => {
                print!("{}", summary_table(&outcome.reports));
                for r in outcome.reports.iter().filter(|r| r.status != Status::Ok) {
                    eprintln!("{} [{}]: {}", r.name, r.status.as_str(), r.message.as_deref().unwrap_or(""));
                }
                if let Some(p) = &cli.report {
                    if let Err(code) = write_report(p, &to_json_string(&outcome.reports)) {
                        return code;
                    }
                }
                ExitCode::from(outcome.exit_code as u8)
            }
            Err(e) => {
                eprintln!("{e}");
                ExitCode::from(e.status.exit_code() as u8)
            }
        },
    }
}
