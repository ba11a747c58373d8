use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use primbase_core::verifier::{
    chains_table, check_inequality_chains, render, run_selftest, run_sweep, threads_from_env, to_json, Format,
    GridPoint, SweepConfig, SweepResult,
};

#[derive(Parser)]
#[command(name = "primbase", version, about = "Base size and minimal degree of primitive permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every grid point of a config file and report the verdicts.
    Sweep {
        config: PathBuf,
        /// Overrides the `format` setting of the config.
        #[arg(long)]
        format: Option<Format>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build one family, e.g. `Affine(d=3,q=2)`, and report its invariants.
    Family {
        spec: String,
        #[arg(long, default_value = "table")]
        format: Format,
    },
    /// Check the sign and monotonicity claims of the inequality chains.
    Chains {
        #[arg(long)]
        json: bool,
    },
    /// Check the built-in table of known small values.
    Selftest,
}

enum Failure {
    Unexpected,
    Usage(String),
}

impl From<primbase_core::verifier::VerifierError> for Failure {
    fn from(e: primbase_core::verifier::VerifierError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn sweep(config: &SweepConfig) -> Result<SweepResult, Failure> {
    Ok(run_sweep(config, threads_from_env()?)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Sweep { config, format, out } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", config.display())))?;
            let config = SweepConfig::parse(&text)?;
            let result = sweep(&config)?;
            let report = render(&result, format.unwrap_or(config.format))?;
            match out {
                Some(path) => std::fs::write(&path, report)
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{report}"),
            }
            eprintln!("{}", result.summary.line());
            eprintln!("{}", result.summary.detail_line());
            if !result.ok() {
                return Err(Failure::Unexpected);
            }
        }
        Command::Family { spec, format } => {
            let config = SweepConfig {
                points: vec![GridPoint { line: 0, spec }],
                ..SweepConfig::default()
            };
            let result = sweep(&config)?;
            let record = &result.records[0];
            if let Some(reason) = &record.skipped {
                return Err(Failure::Usage(format!("{}: {reason}", record.spec)));
            }
            match format {
                Format::Json => print!("{}", to_json(record)?),
                _ => print!("{}", render(&result, format)?),
            }
            if !result.ok() {
                return Err(Failure::Unexpected);
            }
        }
        Command::Chains { json } => {
            let report = check_inequality_chains();
            if json {
                print!("{}", to_json(&report)?);
            } else {
                print!("{}", chains_table(&report));
            }
            eprintln!("{} of {} checks violated", report.violations(), report.checks.len());
            if report.violations() > 0 {
                return Err(Failure::Unexpected);
            }
        }
        Command::Selftest => {
            let cases = run_selftest();
            for c in &cases {
                let mark = if c.passed { "ok  " } else { "FAIL" };
                if c.detail.is_empty() {
                    println!("{mark} {}", c.name);
                } else {
                    println!("{mark} {}: {}", c.name, c.detail);
                }
            }
            let failed = cases.iter().filter(|c| !c.passed).count();
            println!("{} cases, {failed} failed", cases.len());
            if failed > 0 {
                return Err(Failure::Unexpected);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Unexpected) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
