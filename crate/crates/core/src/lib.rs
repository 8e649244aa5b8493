//! Spin-1/2 models of collective yes/no decisions.
//!
//! Each agent is a two-level system; agents interact through a mean-field
//! Heisenberg Hamiltonian. The crate provides:
//!
//! - [`spin_algebra`]: Pauli operators, agent states, N-agent embeddings.
//! - [`hamiltonians`]: cooperative, opposing, external-field and mean-field
//!   Hamiltonians plus Hermitian spectra.
//! - [`thermal_kms`]: Gibbs states, Heisenberg evolution, imaginary-time
//!   continuation and a numerical KMS-condition check.
//! - [`mean_field`]: the self-consistency equation `tanh(J m beta) = -m`, its
//!   solver and the order/disorder transition at `T_c = -J`.
//! - [`dynamics`]: closed-form mean-field evolution against exact finite-N
//!   evolution.
//! - [`cli`]: the sweep driver behind the `spinconsensus` binary.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod hamiltonians;
pub mod mean_field;
pub mod spin_algebra;
pub mod thermal_kms;

pub use error::{Error, Result};
pub use mean_field::{BlochVector, MeanFieldPoint};
pub use spin_algebra::{Axis, Operator, PauliKind, StateVector};
