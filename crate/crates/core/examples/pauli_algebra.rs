//! Single-agent Pauli algebra, agent states and N-agent embeddings.
//!
//! Run with `cargo run --example pauli_algebra`.

use num_complex::Complex64 as C64;
use spinconsensus::spin_algebra::{
    agent_state, commutator, embed, identity_checks, pauli, product_state, total_spin,
};
use spinconsensus::{Axis, PauliKind, StateVector};

fn show(name: &str, kind: PauliKind) {
    let e = kind.entries();
    println!(
        "{name:>3} = [[{:>5}, {:>5}], [{:>5}, {:>5}]]",
        fmt(e[0][0]),
        fmt(e[0][1]),
        fmt(e[1][0]),
        fmt(e[1][1])
    );
}

fn fmt(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("Pauli matrices (basis e+ = yes, e- = no):");
    for (name, kind) in [
        ("s1", PauliKind::X),
        ("s2", PauliKind::Y),
        ("s3", PauliKind::Z),
        ("s+", PauliKind::Plus),
        ("s-", PauliKind::Minus),
    ] {
        show(name, kind);
    }

    // s+ turns "no" into "yes"; s3 reads the decision.
    let yes = StateVector::up();
    let no = StateVector::down();
    let flipped = pauli(PauliKind::Plus).apply(&no)?;
    println!("\ns+ e- = ({}, {})", fmt(flipped[0]), fmt(flipped[1]));
    println!(
        "<e+|s3|e+> = {}, <e-|s3|e-> = {}",
        pauli(PauliKind::Z).expectation(&yes)?.re,
        pauli(PauliKind::Z).expectation(&no)?.re
    );

    // An undecided agent: equal superposition of yes and no.
    let h = 1.0 / 2f64.sqrt();
    let undecided = agent_state(C64::new(h, 0.0), C64::new(h, 0.0))?;
    println!(
        "undecided agent: <s1> = {:.3}, <s3> = {:.3}",
        pauli(PauliKind::X).expectation(&undecided)?.re,
        pauli(PauliKind::Z).expectation(&undecided)?.re
    );

    // Three agents: operators on different sites commute.
    let n = 3;
    let x1 = embed(&pauli(PauliKind::X), 1, n)?;
    let y2 = embed(&pauli(PauliKind::Y), 2, n)?;
    let y1 = embed(&pauli(PauliKind::Y), 1, n)?;
    println!(
        "\nN = {n}: |[s1_1, s2_2]| = {:.1e}, |[s1_1, s2_1]| = {:.1}",
        commutator(&x1, &y2)?.max_abs(),
        commutator(&x1, &y1)?.max_abs()
    );

    let psi = product_state(&[yes.clone(), no.clone(), yes])?;
    let s3 = total_spin(Axis::Z, n)?;
    println!(
        "state (yes, no, yes): <sum s3> = {}",
        s3.expectation(&psi)?.re
    );

    println!("\nidentity report up to N = 4:");
    for check in identity_checks(4)? {
        println!("  {:<48} max error {:.1e}", check.name, check.max_error);
    }
    Ok(())
}
