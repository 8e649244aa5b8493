//! Command dispatch: turn a [`SweepConfig`] into a result table.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use super::config::{CommandKind, HamiltonianKind, SweepConfig};
use super::output::{Meta, Table};
use crate::dynamics::compare_trajectories;
use crate::hamiltonians::{h_ext, h_meanfield, h_total, CouplingMatrix};
use crate::mean_field::{phase_curve_with_tolerance, solve_m, BlochVector};
use crate::spin_algebra::{identity_checks, set_max_agents, single_site_paulis, Axis, Operator};
use crate::thermal_kms::ThermalSystem;

/// Residual above which a KMS check counts as failed.
pub const KMS_THRESHOLD: f64 = 1e-9;
/// Error above which an algebra identity counts as failed.
pub const ALGEBRA_THRESHOLD: f64 = 1e-14;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Model(#[from] crate::Error),
    #[error("I/O failure: {0}")]
    Io(#[from] std::io::Error),
}

/// Outcome of [`run`]. `wall_time` is reported on stderr only, so written
/// files stay byte-identical across runs.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub config: SweepConfig,
    pub table: Table,
    pub meta: Meta,
    pub wall_time: Duration,
}

impl RunResult {
    /// True when some point failed to converge or some check exceeded its
    /// threshold.
    pub fn has_failures(&self) -> bool {
        self.meta.failures > 0
    }
}

/// Execute a command on a worker pool sized by `config.threads`.
pub fn run(config: &SweepConfig) -> Result<RunResult, RunError> {
    set_max_agents(config.n_cap);
    let start = Instant::now();
    let (table, failures, max_error, threshold) = match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| RunError::InvalidConfig(e.to_string()))?
            .install(|| dispatch(config))?,
        None => dispatch(config)?,
    };
    let meta = Meta {
        command: config.command.name(),
        rows: table.rows.len(),
        failures,
        max_error,
        threshold,
        version: env!("CARGO_PKG_VERSION"),
    };
    Ok(RunResult {
        config: config.clone(),
        table,
        meta,
        wall_time: start.elapsed(),
    })
}

type Dispatched = (Table, usize, Option<f64>, Option<f64>);

fn dispatch(cfg: &SweepConfig) -> Result<Dispatched, RunError> {
    match cfg.command {
        CommandKind::SolveM => run_solve_m(cfg),
        CommandKind::PhaseDiagram => run_phase_diagram(cfg),
        CommandKind::KmsCheck => run_kms(cfg),
        CommandKind::Evolve => run_evolve(cfg),
        CommandKind::AlgebraCheck => run_algebra(cfg),
    }
}

fn max_of(values: impl Iterator<Item = f64>) -> Option<f64> {
    values.fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.max(v))))
}

fn run_solve_m(cfg: &SweepConfig) -> Result<Dispatched, RunError> {
    let points = cfg
        .betas
        .par_iter()
        .map(|&beta| solve_m(cfg.j, beta, cfg.tolerance))
        .collect::<crate::Result<Vec<_>>>()?;
    let failures = points.iter().filter(|p| !p.converged).count();
    let rows = points
        .iter()
        .map(|p| {
            vec![
                p.j.into(),
                p.beta.into(),
                p.temperature().into(),
                p.m_c.into(),
                p.converged.into(),
                p.residual.into(),
                p.iterations.into(),
            ]
        })
        .collect();
    let table = Table {
        columns: vec![
            "J",
            "beta",
            "T",
            "m_c",
            "converged",
            "residual",
            "iterations",
        ],
        rows,
    };
    Ok((
        table,
        failures,
        max_of(points.iter().map(|p| p.residual)),
        Some(cfg.tolerance),
    ))
}

fn run_phase_diagram(cfg: &SweepConfig) -> Result<Dispatched, RunError> {
    let points = phase_curve_with_tolerance(cfg.j, &cfg.temperatures, cfg.tolerance)?;
    let failures = points.iter().filter(|p| !p.converged).count();
    let rows = cfg
        .temperatures
        .iter()
        .zip(&points)
        .map(|(&t, p)| {
            vec![
                t.into(),
                p.beta.into(),
                p.m_c.into(),
                p.converged.into(),
                p.residual.into(),
            ]
        })
        .collect();
    let table = Table {
        columns: vec!["T", "beta", "m_c", "converged", "residual"],
        rows,
    };
    Ok((
        table,
        failures,
        max_of(points.iter().map(|p| p.residual)),
        Some(cfg.tolerance),
    ))
}

/// Hamiltonian used by `kms-check`. `total` draws symmetric couplings
/// `J_ij, p_ij` uniformly from `[-1, 1]` with a generator seeded by `seed`.
pub fn kms_hamiltonian(
    kind: HamiltonianKind,
    j: f64,
    b: f64,
    n: usize,
    seed: u64,
) -> crate::Result<Operator> {
    match kind {
        HamiltonianKind::Meanfield => h_meanfield(j, n),
        HamiltonianKind::Ext => h_ext(b, n),
        HamiltonianKind::Total => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut draw = || {
                let mut m = nalgebra::DMatrix::<f64>::zeros(n, n);
                for i in 0..n {
                    for k in i..n {
                        let v = rng.gen_range(-1.0..=1.0);
                        m[(i, k)] = v;
                        m[(k, i)] = v;
                    }
                }
                CouplingMatrix::new(m)
            };
            let jm = draw()?;
            let pm = draw()?;
            h_total(&jm, &pm, n)
        }
    }
}

/// Observable index pairs for `kms-check`: all pairs in exhaustive mode,
/// otherwise `samples` pairs drawn uniformly over site x axis.
pub fn kms_pairs(
    n_observables: usize,
    exhaustive: bool,
    samples: usize,
    seed: u64,
) -> Vec<(usize, usize)> {
    if exhaustive {
        (0..n_observables)
            .flat_map(|a| (0..n_observables).map(move |b| (a, b)))
            .collect()
    } else {
        // Offset the stream so sampling is independent of coupling draws.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(1);
        (0..samples)
            .map(|_| {
                (
                    rng.gen_range(0..n_observables),
                    rng.gen_range(0..n_observables),
                )
            })
            .collect()
    }
}

fn run_kms(cfg: &SweepConfig) -> Result<Dispatched, RunError> {
    let h = kms_hamiltonian(cfg.hamiltonian, cfg.j, cfg.b, cfg.n, cfg.seed)?;
    let system = ThermalSystem::new(&h)?;
    let observables = single_site_paulis(cfg.n)?;
    let pairs = kms_pairs(observables.len(), cfg.exhaustive, cfg.samples, cfg.seed);
    let jobs: Vec<(f64, usize, usize)> = cfg
        .betas
        .iter()
        .flat_map(|&beta| pairs.iter().map(move |&(a, b)| (beta, a, b)))
        .collect();
    let operators: Vec<Operator> = observables.iter().map(|o| o.operator.clone()).collect();
    let mut residuals = Vec::with_capacity(jobs.len());
    for &beta in &cfg.betas {
        residuals.extend(system.kms_residual_pairs(beta, &operators, &pairs)?);
    }
    let failures = residuals.iter().filter(|r| !(**r < KMS_THRESHOLD)).count();
    let rows = jobs
        .iter()
        .zip(&residuals)
        .map(|(&(beta, a, b), &r)| {
            let (oa, ob) = (&observables[a], &observables[b]);
            vec![
                beta.into(),
                oa.site.into(),
                oa.axis.index().into(),
                ob.site.into(),
                ob.axis.index().into(),
                r.into(),
                (r < KMS_THRESHOLD).into(),
            ]
        })
        .collect();
    let table = Table {
        columns: vec![
            "beta", "a_site", "a_axis", "b_site", "b_axis", "residual", "pass",
        ],
        rows,
    };
    Ok((
        table,
        failures,
        max_of(residuals.into_iter()),
        Some(KMS_THRESHOLD),
    ))
}

fn run_evolve(cfg: &SweepConfig) -> Result<Dispatched, RunError> {
    let u = BlochVector::from(cfg.initial);
    let comparisons = compare_trajectories(&cfg.n_list, cfg.j, &u, &cfg.times)?;
    let axes: Vec<Axis> = match cfg.axis {
        Some(a) => vec![a],
        None => Axis::ALL.to_vec(),
    };
    let mut rows = Vec::new();
    for c in &comparisons {
        let r = &c.record;
        for (k, &t) in r.times.iter().enumerate() {
            for &axis in &axes {
                let i = axis.index() - 1;
                let (e, m) = (r.exact_mean[k][i], r.meanfield_mean[k][i]);
                rows.push(vec![
                    r.n_agents.into(),
                    t.into(),
                    axis.index().into(),
                    e.into(),
                    m.into(),
                    (e - m).abs().into(),
                ]);
            }
        }
    }
    let table = Table {
        columns: vec!["N", "t", "axis", "exact", "meanfield", "abs_diff"],
        rows,
    };
    Ok((
        table,
        0,
        max_of(comparisons.iter().map(|c| c.max_deviation)),
        None,
    ))
}

fn run_algebra(cfg: &SweepConfig) -> Result<Dispatched, RunError> {
    let checks = identity_checks(cfg.n)?;
    let failures = checks
        .iter()
        .filter(|c| !(c.max_error <= ALGEBRA_THRESHOLD))
        .count();
    let rows = checks
        .iter()
        .map(|c| {
            vec![
                c.name.as_str().into(),
                c.max_error.into(),
                (c.max_error <= ALGEBRA_THRESHOLD).into(),
            ]
        })
        .collect();
    let table = Table {
        columns: vec!["identity", "max_error", "pass"],
        rows,
    };
    Ok((
        table,
        failures,
        max_of(checks.iter().map(|c| c.max_error)),
        Some(ALGEBRA_THRESHOLD),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::parse_config;
    use crate::cli::output::Cell;

    fn cfg(s: &str) -> SweepConfig {
        parse_config(s.split_whitespace()).unwrap()
    }

    #[test]
    fn phase_diagram_rows() {
        let r = run(&cfg(
            "phase-diagram --J -1 --t-min 0.05 --t-max 1.5 --steps 30",
        ))
        .unwrap();
        assert_eq!(r.table.rows.len(), 30);
        assert_eq!(
            r.table.columns,
            vec!["T", "beta", "m_c", "converged", "residual"]
        );
        assert!(!r.has_failures());
        for row in &r.table.rows {
            let (Cell::Float(t), Cell::Float(m)) = (&row[0], &row[2]) else {
                panic!()
            };
            if *t >= 1.0 {
                assert_eq!(*m, 0.0);
            } else {
                assert!(*m > 0.0);
            }
        }
    }

    #[test]
    fn solve_m_above_critical() {
        let r = run(&cfg("solve-m --J -1 --beta 0.5")).unwrap();
        assert_eq!(r.table.rows[0][3], Cell::Float(0.0));
        assert_eq!(r.meta.failures, 0);
    }

    #[test]
    fn kms_check_exhaustive_small() {
        let r = run(&cfg("kms-check --n 4 --beta 2 --seed 7")).unwrap();
        assert_eq!(r.table.rows.len(), 144);
        assert_eq!(r.meta.failures, 0);
        assert!(r.meta.max_error.unwrap() < KMS_THRESHOLD);
    }

    #[test]
    fn kms_sampling_is_seeded() {
        let a = kms_pairs(18, false, 10, 3);
        assert_eq!(a, kms_pairs(18, false, 10, 3));
        assert_ne!(a, kms_pairs(18, false, 10, 4));
        assert!(a.iter().all(|&(x, y)| x < 18 && y < 18));
    }

    #[test]
    fn total_hamiltonian_is_seeded() {
        let a = kms_hamiltonian(HamiltonianKind::Total, -1.0, 1.0, 3, 5).unwrap();
        let b = kms_hamiltonian(HamiltonianKind::Total, -1.0, 1.0, 3, 5).unwrap();
        let c = kms_hamiltonian(HamiltonianKind::Total, -1.0, 1.0, 3, 6).unwrap();
        assert_eq!(a.max_abs_diff(&b), 0.0);
        assert!(c.max_abs_diff(&a) > 0.0);
        assert!(a.is_hermitian());
    }

    #[test]
    fn evolve_and_algebra() {
        let r = run(&cfg("evolve --n-list 2,3 --time-steps 5")).unwrap();
        assert_eq!(r.table.rows.len(), 2 * 5 * 3);
        assert!(r.meta.max_error.unwrap() <= 1e-12);
        let r = run(&cfg("algebra-check --n 3")).unwrap();
        assert_eq!(r.meta.failures, 0);
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let one = run(&cfg(
            "phase-diagram --J -1 --t-min 0.1 --t-max 2 --steps 40 --threads 1",
        ))
        .unwrap();
        let four = run(&cfg(
            "phase-diagram --J -1 --t-min 0.1 --t-max 2 --steps 40 --threads 4",
        ))
        .unwrap();
        assert_eq!(one.table, four.table);
    }
}
