//! Gibbs states, Heisenberg evolution and the KMS condition for finite
//! Hermitian Hamiltonians.
//!
//! Everything goes through one Hermitian eigendecomposition of `H`. In the
//! eigenbasis, time evolution and imaginary-time continuation are entrywise
//! phase or weight factors `exp(i t (l_j - l_k))` and `exp(-beta (l_j - l_k))`,
//! which keeps the KMS residual at roundoff level even when `exp(beta H)`
//! itself spans many orders of magnitude.

use std::sync::Arc;

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hamiltonians::{spectrum, Spectrum};
use crate::spin_algebra::{c, Operator, C64};

/// An observable in the eigenbasis of `H` and its imaginary-time continuation.
type Prepared = (DMatrix<C64>, DMatrix<C64>);

/// Largest admissible exponent before `exp` overflows an `f64`.
pub const OVERFLOW_GUARD: f64 = 700.0;

fn guard(exponent: f64) -> Result<()> {
    if !exponent.is_finite() || exponent > OVERFLOW_GUARD {
        return Err(Error::OverflowRisk { exponent });
    }
    Ok(())
}

/// A Hermitian Hamiltonian together with its cached eigendecomposition.
#[derive(Debug, Clone)]
pub struct ThermalSystem {
    hamiltonian: Arc<Operator>,
    spectrum: Arc<Spectrum>,
}

impl ThermalSystem {
    pub fn new(h: &Operator) -> Result<Self> {
        let spectrum = spectrum(h)?;
        Ok(ThermalSystem {
            hamiltonian: Arc::new(h.clone()),
            spectrum: Arc::new(spectrum),
        })
    }

    pub fn hamiltonian(&self) -> &Operator {
        &self.hamiltonian
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn dim(&self) -> usize {
        self.spectrum.dim()
    }

    fn spread(&self) -> f64 {
        let l = self.spectrum.eigenvalues();
        l[l.len() - 1] - l[0]
    }

    /// `exp(s H)`.
    pub fn expm(&self, s: C64) -> Result<Operator> {
        guard(s.re.abs() * self.spectrum.spectral_radius())?;
        Ok(self.spectrum.apply_function(|l| (s * l).exp()))
    }

    /// Boltzmann weights `exp(-beta (l_k - l_0)) / Z` in eigenvalue order.
    pub fn boltzmann_weights(&self, beta: f64) -> Result<Vec<f64>> {
        if !(beta >= 0.0) || !beta.is_finite() {
            return Err(Error::NegativeBeta(beta));
        }
        let l0 = self.spectrum.ground_energy();
        let raw: Vec<f64> = self
            .spectrum
            .eigenvalues()
            .iter()
            .map(|&l| (-beta * (l - l0)).exp())
            .collect();
        let z: f64 = raw.iter().sum();
        Ok(raw.into_iter().map(|w| w / z).collect())
    }

    /// `exp(-beta H) / tr exp(-beta H)`.
    pub fn gibbs(&self, beta: f64) -> Result<GibbsState> {
        let weights = self.boltzmann_weights(beta)?;
        let v = self.spectrum.eigenvectors();
        let mut scaled = v.clone();
        for (k, mut col) in scaled.column_iter_mut().enumerate() {
            col *= c(weights[k], 0.0);
        }
        let rho_matrix = scaled * v.adjoint();
        Ok(GibbsState {
            rho: Operator::from_square(rho_matrix),
            beta,
            weights,
            system: self.clone(),
        })
    }

    fn conjugate_in_eigenbasis(
        &self,
        a: &Operator,
        factor: impl Fn(f64, f64) -> C64,
    ) -> Result<DMatrix<C64>> {
        let m = self.spectrum.to_eigenbasis(a)?;
        Ok(self.scale_entries(m, factor))
    }

    fn scale_entries(&self, mut m: DMatrix<C64>, factor: impl Fn(f64, f64) -> C64) -> DMatrix<C64> {
        let l = self.spectrum.eigenvalues();
        for j in 0..m.nrows() {
            for k in 0..m.ncols() {
                m[(j, k)] *= factor(l[j], l[k]);
            }
        }
        m
    }

    fn check_continuation(&self, beta: f64) -> Result<()> {
        if !beta.is_finite() {
            return Err(Error::NonFinite("inverse temperature"));
        }
        guard(beta.abs() * self.spread())
    }

    fn continuation_factor(beta: f64) -> impl Fn(f64, f64) -> C64 {
        move |lj, lk| c((-beta * (lj - lk)).exp(), 0.0)
    }

    /// `A(t) = exp(i H t) A exp(-i H t)`.
    pub fn heisenberg(&self, a: &Operator, t: f64) -> Result<Operator> {
        if !t.is_finite() {
            return Err(Error::NonFinite("time"));
        }
        let m = self.conjugate_in_eigenbasis(a, |lj, lk| c(0.0, t * (lj - lk)).exp())?;
        Ok(self.spectrum.from_eigenbasis(&m))
    }

    fn continued_in_eigenbasis(&self, a: &Operator, beta: f64) -> Result<DMatrix<C64>> {
        self.check_continuation(beta)?;
        self.conjugate_in_eigenbasis(a, Self::continuation_factor(beta))
    }

    /// `A(i beta) = exp(-beta H) A exp(beta H)`, the evolution continued to
    /// imaginary time.
    pub fn continue_imag(&self, a: &Operator, beta: f64) -> Result<Operator> {
        let m = self.continued_in_eigenbasis(a, beta)?;
        Ok(self.spectrum.from_eigenbasis(&m))
    }

    /// `|omega(AB) - omega(B A(i beta))|` for the Gibbs state at `beta`.
    pub fn kms_residual(&self, beta: f64, a: &Operator, b: &Operator) -> Result<f64> {
        self.kms_residual_mismatched(beta, beta, a, b)
    }

    /// KMS residual with the Gibbs state taken at `beta_state` and the
    /// continuation at `beta_continuation`. Vanishes only when the two agree.
    pub fn kms_residual_mismatched(
        &self,
        beta_state: f64,
        beta_continuation: f64,
        a: &Operator,
        b: &Operator,
    ) -> Result<f64> {
        let weights = self.boltzmann_weights(beta_state)?;
        let a_eig = self.spectrum.to_eigenbasis(a)?;
        let b_eig = self.spectrum.to_eigenbasis(b)?;
        let a_cont = self.continued_in_eigenbasis(a, beta_continuation)?;
        Ok(pair_residual(&weights, &a_eig, &b_eig, &a_cont))
    }

    /// KMS residuals for selected `(a, b)` index pairs into `observables`.
    ///
    /// Each observable used is transformed to the eigenbasis once, so a pair
    /// costs `O(d^2)` instead of the `O(d^3)` of [`Self::kms_residual`].
    /// Results follow the order of `pairs`.
    pub fn kms_residual_pairs(
        &self,
        beta: f64,
        observables: &[Operator],
        pairs: &[(usize, usize)],
    ) -> Result<Vec<f64>> {
        let weights = self.boltzmann_weights(beta)?;
        self.check_continuation(beta)?;
        let mut used = vec![false; observables.len()];
        for &(a, b) in pairs {
            for idx in [a, b] {
                *used.get_mut(idx).ok_or(Error::DimensionMismatch {
                    expected: observables.len(),
                    found: idx,
                })? = true;
            }
        }
        let prepared = observables
            .par_iter()
            .zip(used.par_iter())
            .map(|(op, &needed)| -> Result<Option<Prepared>> {
                if !needed {
                    return Ok(None);
                }
                let eig = self.spectrum.to_eigenbasis(op)?;
                let cont = self.scale_entries(eig.clone(), Self::continuation_factor(beta));
                Ok(Some((eig, cont)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(pairs
            .par_iter()
            .map(|&(a, b)| {
                let (a_eig, a_cont) = prepared[a].as_ref().expect("prepared");
                let (b_eig, _) = prepared[b].as_ref().expect("prepared");
                pair_residual(&weights, a_eig, b_eig, a_cont)
            })
            .collect())
    }

    /// KMS residuals over all ordered pairs of `observables`;
    /// entry `(a, b)` is the residual for `(A, B) = (observables[a], observables[b])`.
    pub fn kms_residual_matrix(&self, beta: f64, observables: &[Operator]) -> Result<DMatrix<f64>> {
        let n = observables.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let r = self.kms_residual_pairs(beta, observables, &pairs)?;
        Ok(DMatrix::from_row_slice(n, n, &r))
    }
}

/// `|sum_k w_k (A B)_kk - sum_k w_k (B A_cont)_kk|` from eigenbasis matrices;
/// only the diagonals of the products are formed.
fn pair_residual(
    weights: &[f64],
    a: &DMatrix<C64>,
    b: &DMatrix<C64>,
    a_cont: &DMatrix<C64>,
) -> f64 {
    let d = weights.len();
    let mut lhs = C64::new(0.0, 0.0);
    let mut rhs = C64::new(0.0, 0.0);
    for (k, &w) in weights.iter().enumerate() {
        let mut ab = C64::new(0.0, 0.0);
        let mut ba = C64::new(0.0, 0.0);
        for j in 0..d {
            ab += a[(k, j)] * b[(j, k)];
            ba += b[(k, j)] * a_cont[(j, k)];
        }
        lhs += ab * w;
        rhs += ba * w;
    }
    (lhs - rhs).norm()
}

/// Thermal density matrix of a finite system.
#[derive(Debug, Clone)]
pub struct GibbsState {
    rho: Operator,
    beta: f64,
    weights: Vec<f64>,
    system: ThermalSystem,
}

impl GibbsState {
    pub fn rho(&self) -> &Operator {
        &self.rho
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Eigenvalues of `rho`, aligned with the ascending spectrum of `H`.
    pub fn populations(&self) -> &[f64] {
        &self.weights
    }

    /// The generating Hamiltonian and its spectrum.
    pub fn system(&self) -> &ThermalSystem {
        &self.system
    }

    /// `tr(rho A)`.
    pub fn expect(&self, a: &Operator) -> Result<C64> {
        Ok(self.rho.checked_mul(a)?.trace())
    }
}

/// `exp(s H)` by spectral decomposition.
pub fn expm_hermitian(h: &Operator, s: C64) -> Result<Operator> {
    ThermalSystem::new(h)?.expm(s)
}

pub fn gibbs(h: &Operator, beta: f64) -> Result<GibbsState> {
    if !(beta >= 0.0) {
        return Err(Error::NegativeBeta(beta));
    }
    ThermalSystem::new(h)?.gibbs(beta)
}

pub fn expect(state: &GibbsState, a: &Operator) -> Result<C64> {
    state.expect(a)
}

pub fn heisenberg(h: &Operator, a: &Operator, t: f64) -> Result<Operator> {
    ThermalSystem::new(h)?.heisenberg(a, t)
}

pub fn continue_imag(h: &Operator, a: &Operator, beta: f64) -> Result<Operator> {
    ThermalSystem::new(h)?.continue_imag(a, beta)
}

pub fn kms_residual(h: &Operator, beta: f64, a: &Operator, b: &Operator) -> Result<f64> {
    if !(beta >= 0.0) {
        return Err(Error::NegativeBeta(beta));
    }
    ThermalSystem::new(h)?.kms_residual(beta, a, b)
}

pub fn kms_residual_mismatched(
    h: &Operator,
    beta_state: f64,
    beta_continuation: f64,
    a: &Operator,
    b: &Operator,
) -> Result<f64> {
    ThermalSystem::new(h)?.kms_residual_mismatched(beta_state, beta_continuation, a, b)
}
