use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use paranull::hypersurface::Evaluator;
use paranull::manifold::DerivativeMode;
use paranull::models::ModelKind;
use paranull::verifier::{
    run, sweep_sigma_t, RunOptions, ScenarioConfig, VerifyError, CHECKS, DERIVATIVES_ENV,
    EXIT_CHECK_FAILURE, EXIT_PASS, TOLERANCE_ENV,
};

#[derive(Parser)]
#[command(
    name = "paranull",
    version,
    about = "Verify identities of null hypersurfaces in paracomplex Einstein 4-manifolds"
)]
#[command(
    after_help = "Environment:\n  PARANULL_TOLERANCE    default tolerance for checks without one in the config\n  PARANULL_DERIVATIVES  'fd' or 'jet', overrides the configured derivative mode\n\nExit codes: 0 pass, 1 check failure, 2 config error, 3 construction error, 4 output error"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Space {
    S2xs2,
    H2xh2,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and report every selected check.
    Verify {
        config: PathBuf,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the markdown report here.
        #[arg(long)]
        md: Option<PathBuf>,
    },
    /// Tabulate measured against predicted invariants of sigma-t.
    Sweep {
        #[command(subcommand)]
        family: SweepFamily,
    },
    /// List the registered checks with their default tolerances.
    ListChecks,
    /// Print the version.
    Version,
}

#[derive(Subcommand)]
enum SweepFamily {
    /// The tubes {⟨x,y⟩ = t} of a product of surfaces.
    SigmaT {
        #[arg(long, value_enum)]
        space: Space,
        /// Comma-separated values in (-1, 1).
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            required = true
        )]
        t: Vec<f64>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        md: Option<PathBuf>,
    },
}

fn write(path: &Path, text: &str) -> Result<(), VerifyError> {
    std::fs::write(path, text).map_err(|e| VerifyError::Output(format!("{}: {e}", path.display())))
}

fn execute(cli: Cli, opts: RunOptions) -> Result<bool, VerifyError> {
    match cli.command {
        Command::Verify { config, json, md } => {
            let cfg = ScenarioConfig::load(&config)?;
            let report = run(&cfg, &opts)?;
            print!("{}", report.to_markdown());
            if let Some(p) = json {
                write(&p, &report.to_json())?;
            }
            if let Some(p) = md {
                write(&p, &report.to_markdown())?;
            }
            Ok(report.passed())
        }
        Command::Sweep {
            family: SweepFamily::SigmaT { space, t, json, md },
        } => {
            let space = match space {
                Space::S2xs2 => ModelKind::S2xs2,
                Space::H2xh2 => ModelKind::H2xh2,
            };
            let ev = Evaluator::new(opts.force_mode.unwrap_or(DerivativeMode::Jet));
            let table = sweep_sigma_t(space, &t, ev)?;
            print!("{}", table.to_markdown());
            if let Some(p) = json {
                write(&p, &table.to_json())?;
            }
            if let Some(p) = md {
                write(&p, &table.to_markdown())?;
            }
            Ok(table.passed())
        }
        Command::ListChecks => {
            println!(
                "{:<24} {:>9}  {:<24} description",
                "name", "tolerance", "applies to"
            );
            for c in CHECKS {
                println!(
                    "{:<24} {:>9.0e}  {:<24} {}",
                    c.name,
                    c.default_tolerance,
                    c.needs.describe(),
                    c.summary
                );
            }
            println!("\n{TOLERANCE_ENV} and {DERIVATIVES_ENV} override defaults.");
            Ok(true)
        }
        Command::Version => {
            println!("paranull {}", env!("CARGO_PKG_VERSION"));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = RunOptions::from_env().and_then(|opts| execute(cli, opts));
    match outcome {
        Ok(true) => ExitCode::from(EXIT_PASS as u8),
        Ok(false) => ExitCode::from(EXIT_CHECK_FAILURE as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
