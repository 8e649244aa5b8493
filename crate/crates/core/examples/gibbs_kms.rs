//! Gibbs states and a numerical check of the KMS condition
//! `omega(A B) = omega(B A(i beta))`.
//!
//! Run with `cargo run --example gibbs_kms`.

use spinconsensus::hamiltonians::{h_ext, h_meanfield};
use spinconsensus::spin_algebra::{pauli, single_site_paulis, total_spin};
use spinconsensus::thermal_kms::ThermalSystem;
use spinconsensus::{Axis, Operator, PauliKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // One agent in a field: populations follow exp(-beta E).
    let single = ThermalSystem::new(&h_ext(1.0, 1)?)?;
    let state = single.gibbs(1.0)?;
    println!(
        "one agent, B = 1, beta = 1: populations {:?}",
        state.populations()
    );
    println!(
        "  <s3> = {:.6}  (expected -tanh 1 = {:.6})",
        state.expect(&pauli(PauliKind::Z))?.re,
        -1f64.tanh()
    );

    // Mean-field model: energy and total-spin fluctuations versus temperature.
    let n = 4;
    let system = ThermalSystem::new(&h_meanfield(-1.0, n)?)?;
    let h = system.hamiltonian().clone();
    let s3 = total_spin(Axis::Z, n)?;
    let s3_sq = &s3 * &s3;
    println!("\nmean-field model, J = -1, N = {n}");
    println!("  {:>6} {:>10} {:>12}", "beta", "<H>", "<(sum s3)^2>");
    for beta in [0.1, 0.5, 1.0, 2.0, 5.0] {
        let g = system.gibbs(beta)?;
        println!(
            "  {beta:>6} {:>10.5} {:>12.5}",
            g.expect(&h)?.re,
            g.expect(&s3_sq)?.re
        );
    }

    // KMS residuals over all single-site Pauli pairs.
    let observables: Vec<Operator> = single_site_paulis(n)?
        .into_iter()
        .map(|o| o.operator)
        .collect();
    println!(
        "\nKMS residual over {} observable pairs",
        observables.len().pow(2)
    );
    for beta in [0.1, 1.0, 5.0, 10.0] {
        let r = system.kms_residual_matrix(beta, &observables)?;
        println!("  beta = {beta:>4}: max residual {:.2e}", r.max());
    }

    // The identity fails when the state and the continuation disagree on beta.
    let x = pauli(PauliKind::X);
    let control = single.kms_residual_mismatched(1.0, 2.0, &x, &x)?;
    println!("\nstate at beta = 1, continuation at beta = 2: residual {control:.6}");
    Ok(())
}
