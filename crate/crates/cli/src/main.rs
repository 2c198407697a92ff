use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use slackhopf_cli::commands::{self, CatKind, FindMode, QuasiAction, SlackAction, DEFAULT_SEED, DEFAULT_TRIALS};
use slackhopf_cli::{CliError, Report};

/// Exact checks for slack Hopf structures, quasi-Hopf data and finite categories.
///
/// Exit status is 0 whenever a verdict was computed, 1 for unreadable or
/// invalid input and 2 when an exhaustive search exceeds
/// SLACKHOPF_MAX_EXHAUSTIVE candidates (default 1048576).
#[derive(Parser)]
#[command(name = "slackhopf", version)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of an .alg, .cat or .mon file.
    Validate { file: PathBuf },
    /// Decide whether v is slack, or search for a slack structure.
    Slack {
        file: PathBuf,
        /// Tensor file holding a candidate v.
        #[arg(long, value_name = "VFILE", conflicts_with = "find", required_unless_present = "find")]
        check: Option<PathBuf>,
        #[arg(long, value_enum, value_name = "MODE")]
        find: Option<Mode>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u64,
    },
    /// Quasi-bialgebra tools; files without phi use the trivial associator.
    Quasi {
        file: PathBuf,
        #[command(subcommand)]
        action: QuasiCommand,
    },
    /// Search a finite category or monoid for a slack Hopf witness.
    Fincat {
        file: PathBuf,
        /// Defaults from the extension (.cat or .mon).
        #[arg(long, value_enum)]
        kind: Option<Kind>,
    },
}

#[derive(Subcommand)]
enum QuasiCommand {
    /// Left Hopf or slack only, with sl(v).
    Classify { vfile: PathBuf },
    /// Split v as v₀ ◁ γ with v₀ left Hopf.
    Decompose { vfile: PathBuf },
    /// Check a quasi-antipode (S, 𝔞, 𝔟) and build its left Hopf structure.
    Antipode { qafile: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Randomized,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Category,
    Monoid,
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Validate { file } => commands::validate(&file),
        Command::Slack {
            file,
            check,
            find,
            seed,
            trials,
        } => {
            let action = match (check, find) {
                (Some(v), _) => SlackAction::Check(v),
                (None, Some(Mode::Exhaustive)) => SlackAction::Find(FindMode::Exhaustive),
                (None, Some(Mode::Randomized)) => SlackAction::Find(FindMode::Randomized { seed, trials }),
                (None, None) => unreachable!("clap requires one of --check, --find"),
            };
            commands::slack(&file, &action)
        }
        Command::Quasi { file, action } => {
            let action = match action {
                QuasiCommand::Classify { vfile } => QuasiAction::Classify(vfile),
                QuasiCommand::Decompose { vfile } => QuasiAction::Decompose(vfile),
                QuasiCommand::Antipode { qafile } => QuasiAction::Antipode(qafile),
            };
            commands::quasi(&file, &action)
        }
        Command::Fincat { file, kind } => {
            let kind = kind.map(|k| match k {
                Kind::Category => CatKind::Category,
                Kind::Monoid => CatKind::Monoid,
            });
            commands::fincat(&file, kind)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(report) => {
            let text = if json {
                format!("{}\n", report.to_json())
            } else {
                report.to_string()
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
