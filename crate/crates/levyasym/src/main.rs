use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use levyasym::acceptance::run_all;
use levyasym::commands::{cmd_compare, cmd_cumulants, cmd_rho, cmd_simulate};
use levyasym::compare::{CompareOptions, OracleChoice};
use levyasym::error::{CliError, EXIT_ACCEPTANCE};
use levyasym::parallel::env_threads;

#[derive(Parser)]
#[command(
    name = "levyasym",
    version,
    about = "Saddle-point asymptotics for Poisson arrival sums"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// C, C', C'' and the atom mass at each tilt.
    Cumulants {
        #[arg(long)]
        spec: PathBuf,
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_hyphen_values = true
        )]
        beta: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Asymptotic density and tail against an oracle.
    Compare {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        u: Vec<f64>,
        #[arg(long, value_enum, default_value = "auto")]
        oracle: OracleChoice,
        /// Volterra step.
        #[arg(long, default_value_t = 1.0 / 4096.0)]
        h: f64,
        /// Volterra grid end.
        #[arg(long)]
        tmax: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo draws of the tilted sum.
    Simulate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The Dickman function on a grid.
    Rho {
        #[arg(long)]
        tmax: f64,
        #[arg(long, default_value_t = 1.0 / 1024.0)]
        h: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance criteria.
    Accept,
}

fn emit(text: &str, out: Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli, args: &[String]) -> Result<(), CliError> {
    match cli.command {
        Command::Cumulants { spec, beta, out } => emit(&cmd_cumulants(&spec, &beta, args)?, out),
        Command::Compare {
            spec,
            u,
            oracle,
            h,
            tmax,
            out,
        } => {
            let opts = CompareOptions { oracle, h, tmax };
            emit(&cmd_compare(&spec, &u, opts, args)?, out)
        }
        Command::Simulate {
            spec,
            beta,
            n,
            seed,
            out,
        } => emit(
            &cmd_simulate(&spec, beta, n, seed, env_threads(), args)?,
            out,
        ),
        Command::Rho { tmax, h, out } => emit(&cmd_rho(tmax, h, args)?, out),
        Command::Accept => {
            let results = run_all(|r| println!("{}", r.line()));
            let failed: Vec<String> = results
                .iter()
                .filter(|r| !r.passed)
                .map(|r| r.id.to_string())
                .collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Acceptance(format!(
                    "criteria {}",
                    failed.join(", ")
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    match run(cli, &args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("levyasym: {e}");
            let code = e.exit_code();
            debug_assert!(code != EXIT_ACCEPTANCE || matches!(e, CliError::Acceptance(_)));
            ExitCode::from(code as u8)
        }
    }
}
