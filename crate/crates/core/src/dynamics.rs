//! Mean-field versus exact finite-N time evolution of agent spins.
//!
//! The mean-field dynamics of a single agent is generated by `f . sigma` with
//! `f = J m`; for a homogeneous product state the representation value `m` is
//! the agents' common Bloch vector `u`. The exact dynamics is
//! `exp(i H_N t) . exp(-i H_N t)` with the mean-field Heisenberg `H_N`.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonians::{field_dot_sigma, h_meanfield};
use crate::mean_field::BlochVector;
use crate::spin_algebra::{
    agent_state, c, check_agents, mean_spin, pauli, Axis, Operator, StateVector, C64,
    INPUT_NORM_TOL,
};
use crate::thermal_kms::ThermalSystem;

/// Closed-form evolution of an arbitrary single-agent operator under
/// `f . sigma`:
///
/// `cos^2(ft) X + (i/f) sin(ft) cos(ft) [f.sigma, X] + (1/f^2) sin^2(ft) (f.sigma) X (f.sigma)`
///
/// with `f = |f|`. At `f = 0` the map is the identity.
pub fn evolve_meanfield_operator(f: &BlochVector, x: &Operator, t: f64) -> Result<Operator> {
    if x.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: x.dim(),
        });
    }
    let big_f = f.norm();
    if big_f == 0.0 {
        return Ok(x.clone());
    }
    let fs = field_dot_sigma(f);
    let (s, co) = (big_f * t).sin_cos();
    let fx = fs.matrix() * x.matrix();
    let xf = x.matrix() * fs.matrix();
    let m = x.matrix() * c(co * co, 0.0)
        + (&fx - &xf) * c(0.0, s * co / big_f)
        + fx * fs.matrix() * c(s * s / (big_f * big_f), 0.0);
    Ok(Operator::from_square(m))
}

/// Mean-field evolved `sigma^alpha` of one agent.
pub fn evolve_meanfield(f: &BlochVector, axis: Axis, t: f64) -> Operator {
    evolve_meanfield_operator(f, &pauli(axis.pauli()), t).expect("2x2 operator")
}

fn check_bloch(u: &BlochVector) -> Result<f64> {
    if !u.is_finite() {
        return Err(Error::NonFinite("Bloch vector"));
    }
    let n = u.norm();
    if n > 1.0 + INPUT_NORM_TOL {
        return Err(Error::NonUnitBloch(n));
    }
    Ok(n)
}

fn is_pure(norm: f64) -> bool {
    (norm - 1.0).abs() <= INPUT_NORM_TOL
}

/// Single-agent pure state with unit Bloch vector `u`.
pub fn bloch_state(u: &BlochVector) -> Result<StateVector> {
    let n = check_bloch(u)?;
    if !is_pure(n) {
        return Err(Error::NonUnitBloch(n));
    }
    let u = *u * (1.0 / n);
    // a = cos(theta/2), b = e^{i phi} sin(theta/2)
    let a = ((1.0 + u.m3) / 2.0).max(0.0).sqrt();
    let b = if a > 1e-8 {
        c(u.m1, u.m2) / (2.0 * a)
    } else {
        let r = u.m1.hypot(u.m2);
        if r > 0.0 {
            c(u.m1 / r, u.m2 / r) * ((1.0 - u.m3) / 2.0).max(0.0).sqrt()
        } else {
            c(1.0, 0.0)
        }
    };
    agent_state(c(a, 0.0), b)
}

/// Single-agent density `(1 + u . sigma) / 2` for `|u| <= 1`.
pub fn bloch_density(u: &BlochVector) -> Result<Operator> {
    check_bloch(u)?;
    let m = (DMatrix::<C64>::identity(2, 2) + field_dot_sigma(u).into_matrix()) * c(0.5, 0.0);
    Ok(Operator::from_square(m))
}

/// Homogeneous product density of `n_agents` copies. Pure Bloch vectors go
/// through the agent state amplitudes, mixed ones through `(1 + u.sigma)/2`.
pub fn product_density(u: &BlochVector, n_agents: usize) -> Result<Operator> {
    check_agents(n_agents)?;
    let norm = check_bloch(u)?;
    if is_pure(norm) {
        let single = bloch_state(u)?;
        let mut acc = single.amplitudes().clone();
        for _ in 1..n_agents {
            acc = acc.kronecker(single.amplitudes());
        }
        Ok(StateVector::new(acc)?.projector())
    } else {
        let single = bloch_density(u)?.into_matrix();
        let mut acc = single.clone();
        for _ in 1..n_agents {
            acc = acc.kronecker(&single);
        }
        Ok(Operator::from_square(acc))
    }
}

/// Exact `omega(sigma_N^alpha(t))` for a homogeneous product initial state,
/// with `H_N` diagonalized once and reused for every time and axis.
#[derive(Debug, Clone)]
pub struct ExactEvolution {
    n_agents: usize,
    eigenvalues: Vec<f64>,
    // weights[alpha][(j, k)] = rho'_{kj} sigma'_{jk} in the H_N eigenbasis
    weights: [DMatrix<C64>; 3],
}

impl ExactEvolution {
    pub fn new(n_agents: usize, j: f64, initial: &BlochVector) -> Result<Self> {
        let rho = product_density(initial, n_agents)?;
        let system = ThermalSystem::new(&h_meanfield(j, n_agents)?)?;
        let rho_eig = system.spectrum().to_eigenbasis(&rho)?;
        let mut weights = Vec::with_capacity(3);
        for axis in Axis::ALL {
            let s_eig = system
                .spectrum()
                .to_eigenbasis(&mean_spin(axis, n_agents)?)?;
            weights.push(s_eig.component_mul(&rho_eig.transpose()));
        }
        let weights: [DMatrix<C64>; 3] = weights.try_into().expect("three axes");
        Ok(ExactEvolution {
            n_agents,
            eigenvalues: system.spectrum().eigenvalues().to_vec(),
            weights,
        })
    }

    pub fn n_agents(&self) -> usize {
        self.n_agents
    }

    /// `tr(rho exp(iHt) sigma_N^alpha exp(-iHt))`, before taking the real part.
    pub fn mean_complex(&self, axis: Axis, t: f64) -> C64 {
        let w = &self.weights[axis.index() - 1];
        let l = &self.eigenvalues;
        let mut acc = c(0.0, 0.0);
        for j in 0..l.len() {
            for k in 0..l.len() {
                let wjk = w[(j, k)];
                if wjk != c(0.0, 0.0) {
                    acc += wjk * c(0.0, t * (l[j] - l[k])).exp();
                }
            }
        }
        acc
    }

    pub fn mean(&self, axis: Axis, t: f64) -> f64 {
        self.mean_complex(axis, t).re
    }

    pub fn mean_vector(&self, t: f64) -> [f64; 3] {
        [
            self.mean(Axis::X, t),
            self.mean(Axis::Y, t),
            self.mean(Axis::Z, t),
        ]
    }
}

/// `<Phi_u, exp(i H_N t) sigma_N^alpha exp(-i H_N t) Phi_u>`.
pub fn evolve_exact_mean(
    n_agents: usize,
    j: f64,
    initial: &BlochVector,
    axis: Axis,
    t: f64,
) -> Result<f64> {
    Ok(ExactEvolution::new(n_agents, j, initial)?.mean(axis, t))
}

/// Single-agent expectation of the mean-field evolved `sigma^alpha` with
/// `f = J u`.
pub fn evolve_meanfield_mean(j: f64, initial: &BlochVector, axis: Axis, t: f64) -> Result<f64> {
    let rho = bloch_density(initial)?;
    let evolved = evolve_meanfield(&(*initial * j), axis, t);
    Ok(rho.checked_mul(&evolved)?.trace().re)
}

/// Exact and mean-field mean-spin trajectories for one N.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub n_agents: usize,
    pub j: f64,
    pub initial_bloch: BlochVector,
    pub times: Vec<f64>,
    pub exact_mean: Vec<[f64; 3]>,
    pub meanfield_mean: Vec<[f64; 3]>,
}

impl TrajectoryRecord {
    /// `max_{t, alpha} |exact - meanfield|`.
    pub fn max_deviation(&self) -> f64 {
        self.exact_mean
            .iter()
            .zip(&self.meanfield_mean)
            .flat_map(|(e, m)| e.iter().zip(m).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max)
    }
}

/// Trajectory of all three mean-spin components on a caller-supplied time grid.
pub fn trajectory(
    n_agents: usize,
    j: f64,
    initial: &BlochVector,
    times: &[f64],
) -> Result<TrajectoryRecord> {
    if times.iter().any(|t| !t.is_finite()) {
        return Err(Error::NonFinite("time grid"));
    }
    let exact = ExactEvolution::new(n_agents, j, initial)?;
    let exact_mean = times.iter().map(|&t| exact.mean_vector(t)).collect();
    let meanfield_mean = times
        .iter()
        .map(|&t| -> Result<[f64; 3]> {
            Ok([
                evolve_meanfield_mean(j, initial, Axis::X, t)?,
                evolve_meanfield_mean(j, initial, Axis::Y, t)?,
                evolve_meanfield_mean(j, initial, Axis::Z, t)?,
            ])
        })
        .collect::<Result<_>>()?;
    Ok(TrajectoryRecord {
        n_agents,
        j,
        initial_bloch: *initial,
        times: times.to_vec(),
        exact_mean,
        meanfield_mean,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryComparison {
    pub record: TrajectoryRecord,
    pub max_deviation: f64,
}

/// Exact vs mean-field trajectories across an N ladder, in input order.
pub fn compare_trajectories(
    n_list: &[usize],
    j: f64,
    initial: &BlochVector,
    times: &[f64],
) -> Result<Vec<TrajectoryComparison>> {
    let norm = check_bloch(initial)?;
    if !is_pure(norm) {
        return Err(Error::NonUnitBloch(norm));
    }
    n_list
        .par_iter()
        .map(|&n| {
            let record = trajectory(n, j, initial, times)?;
            let max_deviation = record.max_deviation();
            Ok(TrajectoryComparison {
                record,
                max_deviation,
            })
        })
        .collect()
}
