//! `qquarter`: command-line front end for the spin-structure toolkit.
//!
//! Every subcommand prints a human-readable report by default and a single
//! JSON document with `--json`. Exit codes: 0 success, 1 domain error,
//! 2 usage error.

mod commands;
mod selftest;

use std::process::ExitCode;

use clap::{error::ErrorKind, Parser, Subcommand};
use serde_json::{json, Value};

use commands::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "qquarter",
    version,
    about = "Arithmetic spin structures on supersingular elliptic curves"
)]
struct Cli {
    /// Emit one JSON document instead of the human-readable report.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert symbol (a, b)_v, or the ramified places of (a, b) when no place is given.
    Hilbert {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// A prime or `inf`.
        #[arg(long)]
        place: Option<String>,
    },
    /// The quaternion algebra ramified exactly at p and infinity.
    Bpinf {
        #[arg(long)]
        p: u64,
    },
    /// Isogeny classes of elliptic curves over F_q, q = p^a.
    Classify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        a: u32,
    },
    /// Arithmetic spin structure on the class with trace beta over F_{p^(2n)}.
    Spin {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        /// Trace of Frobenius; defaults to -2p^n.
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<i64>,
    },
    /// Zeta and L-functions, the exact identity and a numeric check at s.
    Lfunc {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        /// Rational evaluation point.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        s: String,
    },
    /// Brute-force elliptic curves over F_q.
    Curves {
        #[arg(long)]
        q: u64,
        /// One representative curve per Frobenius trace.
        #[arg(long, conflicts_with = "find_q14")]
        census: bool,
        /// First curve over F_q (q = p^2) with (p+1)^2 points.
        #[arg(long = "find-q14")]
        find_q14: bool,
    },
    /// l-adic and crystalline realization data of the spin lift.
    Crystal {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        ell: u64,
    },
    /// Quick run of the acceptance checks.
    Selftest,
}

/// A command result: the JSON document and its human rendering.
pub struct Report {
    pub json: Value,
    pub human: String,
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    commands::apply_environment()?;
    match &cli.command {
        Command::Hilbert { a, b, place } => commands::hilbert(a, b, place.as_deref()),
        Command::Bpinf { p } => commands::bpinf(*p),
        Command::Classify { p, a } => commands::classify(*p, *a),
        Command::Spin { p, n, beta } => commands::spin(*p, *n, *beta),
        Command::Lfunc { p, n, s } => commands::lfunc(*p, *n, s),
        Command::Curves {
            q,
            census,
            find_q14,
        } => commands::curves(*q, *census, *find_q14),
        Command::Crystal { p, n, ell } => commands::crystal(*p, *n, *ell),
        Command::Selftest => Ok(selftest::run()),
    }
}

fn print_error(json: bool, err: &CliError) {
    if json {
        println!("{}", json!({"error": err.code, "detail": err.detail}));
    } else {
        eprintln!("error: {}", err.detail);
    }
}

fn main() -> ExitCode {
    let json_requested = std::env::args().any(|a| a == "--json");
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            if json_requested {
                let detail = e.kind().as_str().unwrap_or("invalid arguments").to_string();
                print_error(true, &CliError::usage(detail));
            }
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("serializable")
                );
            } else {
                print!("{}", report.human);
            }
            let failed = report.json.get("all_pass") == Some(&Value::Bool(false));
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            print_error(cli.json, &err);
            ExitCode::from(err.exit_code())
        }
    }
}
