// `!(x <= y)` is used on purpose so that NaN counts as a failure.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod run;
mod validate;

use clap::Parser;
use config::{Cli, Command, RunConfig};
use run::RunError;
use std::process::ExitCode;

const CONFIG_ERROR: u8 = 2;
const NUMERIC_ERROR: u8 = 3;

/// Sizes the global pool from `RISKBOUNDS_THREADS` when it is set.
fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("RISKBOUNDS_THREADS") else { return Ok(()) };
    let k: usize = v.trim().parse().map_err(|_| format!("RISKBOUNDS_THREADS must be a positive integer, got {v:?}"))?;
    if k == 0 {
        return Err("RISKBOUNDS_THREADS must be at least 1".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(k).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(CONFIG_ERROR);
    }
    match cli.command {
        Command::Validate(args) => {
            let forms = match args.mutate {
                Some(m) => validate::ClosedForms::mutated(m),
                None => validate::ClosedForms::default(),
            };
            let checks = validate::run_suites(&args, &forms);
            if validate::report(&checks) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        command => {
            let result = RunConfig::resolve(command).map_err(RunError::Config).and_then(|cfg| run::run(&cfg));
            match result {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(match e {
                        RunError::Config(_) => CONFIG_ERROR,
                        RunError::Numeric { .. } => NUMERIC_ERROR,
                        RunError::Io(_) => 1,
                    })
                }
            }
        }
    }
}
