//! Sweep driver behind the `spinconsensus` binary.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid configuration or model
//! input, 3 non-convergence or a check above its threshold.

pub mod config;
pub mod output;
pub mod run;

use std::ffi::OsString;
use std::io::Write;

pub use config::{
    parse_config, CommandKind, ConfigError, HamiltonianKind, OutputFormat, SweepConfig,
};
pub use output::{Cell, Meta, Table};
pub use run::{run, RunError, RunResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_FAILED_CHECK: i32 = 3;

fn exit_code(e: &RunError) -> i32 {
    match e {
        RunError::Io(_) => EXIT_IO,
        RunError::InvalidConfig(_) | RunError::Model(_) => EXIT_INVALID,
    }
}

/// Parse, run and write results. Returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match parse_config(args) {
        Ok(c) => c,
        Err(ConfigError::Info(text)) => {
            print!("{text}");
            return EXIT_OK;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INVALID;
        }
    };
    let result = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let written = output::render(&config, &result.table, &result.meta).and_then(|bytes| {
        match &config.output {
            Some(path) => output::write_atomic(path, &bytes),
            None => std::io::stdout().lock().write_all(&bytes),
        }
    });
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_IO;
    }
    let m = &result.meta;
    eprintln!(
        "{}: {} rows, {} failures, max error {}, {:.3}s",
        m.command,
        m.rows,
        m.failures,
        m.max_error
            .map_or("n/a".to_string(), |v| format!("{v:.3e}")),
        result.wall_time.as_secs_f64()
    );
    if result.has_failures() {
        EXIT_FAILED_CHECK
    } else {
        EXIT_OK
    }
}
