//! Interaction Hamiltonians and their spectra.
//!
//! The mean-field Heisenberg operator depends only on the total spin, so its
//! spectrum is a handful of highly degenerate levels. The example also checks
//! that uniform couplings `J/N`, `p/N` with `p = 2J` rebuild it from the
//! cooperative and opposing parts.
//!
//! Run with `cargo run --example hamiltonian_spectra`.

use spinconsensus::hamiltonians::{h_ext, h_meanfield, h_pi, h_total, spectrum, MeanFieldCoupling};
use spinconsensus::BlochVector;

fn levels(eigenvalues: &[f64]) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &l in eigenvalues {
        match out.last_mut() {
            Some((v, count)) if (l - *v).abs() < 1e-9 => *count += 1,
            _ => out.push((l, 1)),
        }
    }
    out
}

fn describe(eigenvalues: &[f64]) -> String {
    let text: Vec<String> = levels(eigenvalues)
        .iter()
        .map(|(l, d)| format!("{:+.4} ({d})", if l.abs() < 1e-12 { 0.0 } else { *l }))
        .collect();
    text.join(", ")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let j = -1.0;
    println!("mean-field Heisenberg spectrum, J = {j}: level (degeneracy)");
    for n in 1..=6 {
        let spec = spectrum(&h_meanfield(j, n)?)?;
        println!("  N = {n}: {}", describe(spec.eigenvalues()));
    }

    println!("\nreduction of the general model to the mean-field operator (p = 2J):");
    for n in 2..=5 {
        let (jm, pm) = MeanFieldCoupling::heisenberg(j).reduce(n)?;
        let diff = h_total(&jm, &pm, n)?.max_abs_diff(&h_meanfield(j, n)?);
        println!("  N = {n}: max |h_total - h_meanfield| = {diff:.1e}");
    }

    let b = 0.5;
    let ext = spectrum(&h_ext(b, 3)?)?;
    println!(
        "\nexternal field B = {b}, N = 3: {}",
        describe(ext.eigenvalues())
    );

    let f = BlochVector::new(0.3, -0.4, 0.0);
    let pi = spectrum(&h_pi(&f, 2)?)?;
    println!(
        "mean-field generator f = (0.3, -0.4, 0), N = 2: {}",
        describe(pi.eigenvalues())
    );
    Ok(())
}
