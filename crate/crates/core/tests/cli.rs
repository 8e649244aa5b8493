//! End-to-end tests of the `spinconsensus` binary.

use std::path::Path;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinconsensus"))
        .args(args)
        .env_remove("SPINCONSENSUS_THREADS")
        .output()
        .expect("spawn binary")
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn phase_diagram_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pd.csv");
    let o = bin(&[
        "phase-diagram",
        "--J",
        "-1",
        "--t-min",
        "0.05",
        "--t-max",
        "1.5",
        "--steps",
        "30",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(o.stdout.is_empty());
    let (header, rows) = read_csv(&out);
    assert_eq!(header, ["T", "beta", "m_c", "converged", "residual"]);
    assert_eq!(rows.len(), 30);
    for row in &rows {
        let t: f64 = row[0].parse().unwrap();
        let beta: f64 = row[1].parse().unwrap();
        let m: f64 = row[2].parse().unwrap();
        assert_eq!(row[3], "true");
        assert!((t * beta - 1.0).abs() < 1e-15);
        if t >= 1.0 {
            assert_eq!(m, 0.0);
        } else {
            assert!(m > 0.0 && m <= 1.0);
        }
    }
}

#[test]
fn solve_m_prints_to_stdout() {
    let o = bin(&["solve-m", "--J", "-1", "--beta", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("J,beta,T,m_c,converged,residual,iterations")
    );
    let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(fields[3].parse::<f64>().unwrap(), 0.0);
    assert_eq!(fields[4], "true");
}

#[test]
fn kms_check_passes_and_is_seeded() {
    let o = bin(&["kms-check", "--n", "4", "--beta", "2", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 144);
    for line in text.lines().skip(1) {
        let r: f64 = line.split(',').nth(5).unwrap().parse().unwrap();
        assert!(r < 1e-9, "{line}");
    }

    let sampled = |seed: &str| {
        bin(&[
            "kms-check",
            "--n",
            "5",
            "--beta",
            "1,5",
            "--hamiltonian",
            "total",
            "--samples",
            "20",
            "--seed",
            seed,
        ])
    };
    let a = sampled("3");
    let b = sampled("3");
    let c = sampled("4");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(String::from_utf8(a.stdout).unwrap().lines().count(), 1 + 40);
}

#[test]
fn validation_errors_exit_2() {
    for args in [
        &[
            "phase-diagram",
            "--J",
            "-1",
            "--t-min",
            "0.1",
            "--t-max",
            "1",
            "--steps",
            "0",
        ][..],
        &[][..],
        &["solve-m", "--J", "x", "--beta", "1"][..],
        &["solve-m", "--J", "-1", "--beta", "1", "--nope", "1"][..],
        &["kms-check", "--n", "13", "--beta", "1"][..],
        &["kms-check", "--n", "3", "--beta", "1", "--threads", "0"][..],
        &["evolve", "--u", "0.5,0,0"][..],
    ] {
        let o = bin(args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn kms_overflow_is_rejected() {
    let o = bin(&[
        "kms-check",
        "--n",
        "2",
        "--beta",
        "400",
        "--hamiltonian",
        "ext",
        "--B",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_and_json_output() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("sweep.conf");
    std::fs::write(
        &conf,
        "# phase sweep\nJ = -2\nt-min = 0.5\nt-max = 3\nsteps = 6\nformat = json\n",
    )
    .unwrap();
    let out = dir.path().join("pd.json");
    let o = bin(&[
        "phase-diagram",
        "--config",
        conf.to_str().unwrap(),
        "--t-max",
        "2.5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(doc["config"]["j"], -2.0);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[5]["T"], 2.5);
    assert_eq!(rows[5]["m_c"], 0.0);
    assert!(rows[0]["m_c"].as_f64().unwrap() > 0.9);
    assert_eq!(doc["meta"]["command"], "phase-diagram");

    std::fs::write(&conf, "J = -1\ncolour = red\n").unwrap();
    let o = bin(&["solve-m", "--config", conf.to_str().unwrap(), "--beta", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn thread_env_fallback_keeps_output() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_spinconsensus"))
            .args([
                "phase-diagram",
                "--J",
                "-1",
                "--t-min",
                "0.2",
                "--t-max",
                "1.4",
                "--steps",
                "50",
            ])
            .env("SPINCONSENSUS_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let three = run("3");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, three.stdout);
    assert_eq!(run("zero").status.code(), Some(2));
}

#[test]
fn evolve_and_algebra_commands() {
    let o = bin(&[
        "evolve",
        "--n-list",
        "2,4",
        "--time-steps",
        "6",
        "--axis",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(
        text.lines().next(),
        Some("N,t,axis,exact,meanfield,abs_diff")
    );
    assert_eq!(text.lines().count(), 1 + 2 * 6);
    for line in text.lines().skip(1) {
        let d: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(d < 1e-12);
    }

    let o = bin(&["algebra-check", "--n", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["meta"]["failures"], 0);
}
