//! Driving sweeps programmatically with the same configuration the
//! `spinconsensus` binary uses.
//!
//! Run with `cargo run --example sweep_driver`.

use spinconsensus::cli::output::render_csv;
use spinconsensus::cli::{parse_config, run};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = parse_config([
        "phase-diagram",
        "--J",
        "-1",
        "--t-min",
        "0.8",
        "--t-max",
        "1.2",
        "--steps",
        "5",
        "--threads",
        "2",
    ])?;
    let result = run(&config)?;
    print!("{}", String::from_utf8(render_csv(&result.table)?)?);
    eprintln!(
        "{} rows, {} failures",
        result.meta.rows, result.meta.failures
    );

    let config = parse_config([
        "kms-check",
        "--n",
        "6",
        "--beta",
        "1,5",
        "--hamiltonian",
        "total",
        "--samples",
        "8",
        "--seed",
        "11",
    ])?;
    let result = run(&config)?;
    println!(
        "\nkms-check N = 6 (sampled): worst residual {:.2e}",
        result.meta.max_error.unwrap_or(0.0)
    );
    Ok(())
}
