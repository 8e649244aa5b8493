//! Mean-field single-agent dynamics against exact finite-N evolution.
//!
//! Run with `cargo run --example meanfield_dynamics`.

use spinconsensus::dynamics::{compare_trajectories, evolve_meanfield, ExactEvolution};
use spinconsensus::hamiltonians::h_meanfield;
use spinconsensus::spin_algebra::{commutator, pauli, total_spin};
use spinconsensus::{Axis, BlochVector, PauliKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Closed-form single-agent evolution: sigma^3 precesses about f.
    let f = BlochVector::new(0.0, 1.0, 0.0);
    println!("s3 evolved about f = (0, 1, 0):");
    for t in [0.0, 0.25, 0.5, 0.75] {
        let s = evolve_meanfield(&f, Axis::Z, t * std::f64::consts::PI);
        let along_x = (s.matrix() * pauli(PauliKind::X).matrix()).trace().re / 2.0;
        let along_z = (s.matrix() * pauli(PauliKind::Z).matrix()).trace().re / 2.0;
        println!("  t = {t:.2} pi: s3(t) = {along_x:+.3} s1 {along_z:+.3} s3");
    }

    // The exact model conserves the total spin, hence the mean spin.
    for n in 2..=5 {
        let h = h_meanfield(-1.0, n)?;
        let worst = Axis::ALL
            .iter()
            .map(|&a| {
                commutator(&h, &total_spin(a, n).unwrap())
                    .unwrap()
                    .max_abs()
            })
            .fold(0.0, f64::max);
        println!("N = {n}: max |[H_N, S^alpha]| = {worst:.1e}");
    }

    let u = BlochVector::new(0.6, 0.0, 0.8);
    let exact = ExactEvolution::new(4, -1.0, &u)?;
    println!("\nexact mean spin, N = 4, u = (0.6, 0, 0.8):");
    for t in [0.0, 1.0, 2.0] {
        let m = exact.mean_vector(t);
        println!("  t = {t}: ({:+.6}, {:+.6}, {:+.6})", m[0], m[1], m[2]);
    }

    let times: Vec<f64> = (0..=20).map(|k| 0.1 * k as f64).collect();
    println!("\nmax |exact - mean field| over t in [0, 2]:");
    for c in compare_trajectories(
        &[2, 4, 6, 8],
        -1.0,
        &BlochVector::new(1.0, 0.0, 0.0),
        &times,
    )? {
        println!("  N = {}: {:.2e}", c.record.n_agents, c.max_deviation);
    }
    Ok(())
}
