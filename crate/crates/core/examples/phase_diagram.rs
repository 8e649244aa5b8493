//! Order parameter of the mean-field model across the transition at
//! `T_c = -J`, written as CSV to stdout.
//!
//! Run with `cargo run --example phase_diagram > pd.csv`.

use spinconsensus::mean_field::{
    critical_temperature, kms_consistency_lhs, phase_curve, phi_prime,
};
use spinconsensus::BlochVector;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let j = -1.0;
    let tc = critical_temperature(j)?;
    eprintln!("J = {j}: T_c = {tc}");

    let temps: Vec<f64> = (1..=60).map(|k| 0.025 * k as f64).collect();
    let points = phase_curve(j, &temps)?;

    println!("T,beta,m_c,converged,slope_at_root,consistency");
    for p in &points {
        // A root vector with a transverse component must satisfy the thermal
        // consistency condition as well.
        let v = BlochVector::new(0.0, 0.0, p.m_c);
        println!(
            "{:.3},{:.6},{:.12},{},{:.6},{:.1e}",
            p.temperature(),
            p.beta,
            p.m_c,
            p.converged,
            phi_prime(p.m_c, j, p.beta),
            kms_consistency_lhs(&v, j, p.beta)
        );
    }

    let ordered = points.iter().filter(|p| p.m_c > 0.0).count();
    eprintln!(
        "{ordered} of {} temperatures are ordered (m_c > 0)",
        points.len()
    );
    Ok(())
}
