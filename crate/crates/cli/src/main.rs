use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pmmeas_core::harness::{
    default_window, explore, export_plotdata, resolve_export, run_suite, ExploreConfig, ExploreMode,
    ExploreStatus, ExportTarget, HarnessError, SuiteConfig,
};

#[derive(Parser)]
#[command(name = "pmmeas", version, about = "Checks for probabilistic metric and measure structures on finite instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run theorem suites and write a JSON report.
    Verify {
        /// JSON configuration file; defaults apply to missing fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated suite names; an empty value selects none.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Report path; the report goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized counterexample search or census.
    Explore {
        /// find-nonassoc, find-pi-top-violation or s-tau-census.
        #[arg(long)]
        mode: String,
        #[arg(long, default_value_t = 20)]
        budget: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Fixed weights for find-pi-top-violation, comma-separated.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<f64>>,
        /// Points per census space.
        #[arg(long, default_value_t = 3)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a DDF as CSV plot data.
    Export {
        /// epsilon:<a>, ddf-file:<path> or lambda:<bits>.
        #[arg(long)]
        what: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        x_max: Option<f64>,
        #[arg(long)]
        step: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn write_or_print(text: &str, out: Option<&PathBuf>) -> Result<(), HarnessError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| HarnessError::IoFailure(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(cmd: Command) -> Result<u8, HarnessError> {
    match cmd {
        Command::Verify { config, suite, tol, seed, out } => {
            let mut cfg = match &config {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| HarnessError::ConfigParse(format!("{}: {e}", path.display())))?;
                    SuiteConfig::from_json(&text)?
                }
                None => SuiteConfig::default(),
            };
            if let Some(names) = suite {
                cfg.suites = names
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(String::from)
                    .collect();
            }
            if let Some(t) = tol {
                cfg.tolerance = t;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let report = run_suite(&cfg)?;
            write_or_print(&report.to_json(), out.as_ref())?;
            eprint!("{}", report.summary());
            Ok(report.exit_code() as u8)
        }
        Command::Explore { mode, budget, seed, weights, points, out } => {
            let mut cfg = ExploreConfig::new(mode.parse::<ExploreMode>()?);
            cfg.budget = budget;
            cfg.weights = weights;
            cfg.census_points = points;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let report = explore(&cfg)?;
            write_or_print(&report.to_json(), out.as_ref())?;
            match report.status {
                ExploreStatus::Found => eprintln!("{}: witness found after {} tries", cfg.mode, report.tried),
                ExploreStatus::BudgetExhausted => eprintln!("{}: none found within budget {}", cfg.mode, cfg.budget),
                ExploreStatus::Tabulated => eprintln!("{}: tabulated {} spaces", cfg.mode, report.tried),
            }
            Ok(0)
        }
        Command::Export { what, out, x_max, step, seed } => {
            let target: ExportTarget = what.parse()?;
            let f = resolve_export(&target, seed.unwrap_or(SuiteConfig::default().seed))?;
            let (dx, ds) = default_window(&f);
            let rows = export_plotdata(&f, x_max.unwrap_or(dx), step.unwrap_or(ds), &out)?;
            eprintln!("wrote {rows} rows to {}", out.display());
            Ok(0)
        }
    }
}
