//! `holed-torus` command-line front end.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use holed_torus::regions::DEFAULT_MAX_WORD_LEN;

#[derive(Debug, Parser)]
#[command(
    name = "holed-torus",
    version,
    about = "Charts, length spectra and extremal lengths of marked once-holed tori"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for scans and batched solves (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a surface descriptor and report its chart data.
    Chart {
        #[arg(long)]
        input: PathBuf,
    },
    /// Length spectrum of a Fenchel-Nielsen point as CSV.
    Spectrum {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_WORD_LEN)]
        max_word_len: usize,
    },
    /// Compare the length spectrum of X (`--input`) against Y0.
    Sigma {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        y0: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_WORD_LEN)]
        max_word_len: usize,
    },
    /// Dominance verdicts over a planar slice through Y0, as CSV.
    Scan {
        #[arg(long)]
        y0: PathBuf,
        /// l,lp | l,theta | lp,theta
        #[arg(long, default_value = "l,lp")]
        plane: String,
        /// Two ranges `start:end:steps`, one per plane coordinate.
        #[arg(long, num_args = 2, required = true, allow_hyphen_values = true)]
        ranges: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_WORD_LEN)]
        max_word_len: usize,
    },
    /// Critical extremal lengths and strips for Y0.
    Critical {
        #[arg(long, alias = "input")]
        y0: PathBuf,
    },
    /// Probe the corner of the dominance region at Y0.
    Corner {
        #[arg(long, alias = "input")]
        y0: PathBuf,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_WORD_LEN)]
        max_word_len: usize,
    },
    /// Extremal length on a slit torus with its refinement history.
    Modulus {
        /// Slit descriptor; alternatively give `--tau` and `--s`.
        #[arg(long, conflicts_with_all = ["tau", "s"])]
        input: Option<PathBuf>,
        /// `re,im`
        #[arg(long, allow_hyphen_values = true, requires = "s")]
        tau: Option<String>,
        #[arg(long, requires = "tau")]
        s: Option<f64>,
        /// a | b | ab_inv | all
        #[arg(long, default_value = "a")]
        class: String,
        #[arg(long, default_value_t = 64)]
        grid_n: usize,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[arg(long, default_value_t = 5e-3)]
        tol: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::run(&cli);
    if let Some(report) = &outcome.report {
        if let Err(e) = commands::emit(cli.out.as_deref(), report) {
            eprintln!("error: cannot write output: {e}");
            return ExitCode::from(1);
        }
    }
    if let Some(msg) = &outcome.message {
        eprintln!("error: {msg}");
    }
    ExitCode::from(outcome.code)
}
