//! Agent interaction Hamiltonians and Hermitian spectral decomposition.
//!
//! All pair sums run over every ordered pair `(i, j)` including `i = j`, so
//! diagonal couplings contribute constant shifts (`sigma^3 sigma^3 = 1`,
//! `sigma^+ sigma^- + sigma^- sigma^+ = 1`).

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mean_field::BlochVector;
use crate::spin_algebra::{build_local_sum, c, check_agents, LocalTerm, Operator, PauliKind, C64};

/// Real `N x N` pair couplings `J_ij` or `p_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix {
    values: DMatrix<f64>,
}

impl CouplingMatrix {
    pub fn new(values: DMatrix<f64>) -> Result<Self> {
        if !values.is_square() {
            return Err(Error::NotSquare {
                rows: values.nrows(),
                cols: values.ncols(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("coupling matrix"));
        }
        Ok(CouplingMatrix { values })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        Self::new(DMatrix::from_fn(n, n, f))
    }

    /// Every entry, diagonal included, equal to `value`.
    pub fn uniform(n: usize, value: f64) -> Result<Self> {
        Self::from_fn(n, |_, _| value)
    }

    /// `value` off the diagonal, zero on it.
    pub fn uniform_off_diagonal(n: usize, value: f64) -> Result<Self> {
        Self::from_fn(n, |i, j| if i == j { 0.0 } else { value })
    }

    pub fn zeros(n: usize) -> Self {
        CouplingMatrix {
            values: DMatrix::zeros(n, n),
        }
    }

    pub fn n(&self) -> usize {
        self.values.nrows()
    }

    /// Coupling between 0-based agents `i` and `j`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[(i, j)]
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    pub fn is_symmetric(&self) -> bool {
        self.values == self.values.transpose()
    }

    fn check_size(&self, n_agents: usize) -> Result<()> {
        if self.n() != n_agents {
            return Err(Error::DimensionMismatch {
                expected: n_agents,
                found: self.n(),
            });
        }
        check_agents(n_agents)
    }
}

/// Uniform mean-field couplings `J_ij -> J/N`, `p_ij -> p/N`, plus an
/// optional external field `B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanFieldCoupling {
    pub j: f64,
    pub p: f64,
    pub b: f64,
}

impl MeanFieldCoupling {
    /// The Heisenberg point `p = 2J`.
    pub fn heisenberg(j: f64) -> Self {
        MeanFieldCoupling {
            j,
            p: 2.0 * j,
            b: 0.0,
        }
    }

    /// `(J/N, p/N)` coupling matrices for `n_agents`, requiring `p = 2J`.
    pub fn reduce(&self, n_agents: usize) -> Result<(CouplingMatrix, CouplingMatrix)> {
        if ![self.j, self.p, self.b].iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("mean-field coupling"));
        }
        if (self.p - 2.0 * self.j).abs() > 1e-12 * self.j.abs().max(1.0) {
            return Err(Error::MeanFieldRelation {
                j: self.j,
                p: self.p,
            });
        }
        let n = n_agents as f64;
        Ok((
            CouplingMatrix::uniform(n_agents, self.j / n)?,
            CouplingMatrix::uniform(n_agents, self.p / n)?,
        ))
    }
}

fn built(n_agents: usize, terms: &[LocalTerm]) -> Operator {
    Operator::from_square(build_local_sum(n_agents, terms))
}

fn pair_terms(
    couplings: &CouplingMatrix,
    pairs: &[(PauliKind, PauliKind)],
    weight: f64,
) -> Vec<LocalTerm> {
    let n = couplings.n();
    let mut terms = Vec::with_capacity(n * n * pairs.len());
    for i in 0..n {
        for j in 0..n {
            let v = couplings.get(i, j);
            if v == 0.0 {
                continue;
            }
            for &(a, b) in pairs {
                terms.push(LocalTerm {
                    coeff: c(weight * v, 0.0),
                    factors: vec![(i + 1, a.entries()), (j + 1, b.entries())],
                });
            }
        }
    }
    terms
}

/// `sum_{i,j} J_ij sigma_i^3 sigma_j^3`.
pub fn h_coop(couplings: &CouplingMatrix, n_agents: usize) -> Result<Operator> {
    couplings.check_size(n_agents)?;
    let terms = pair_terms(couplings, &[(PauliKind::Z, PauliKind::Z)], 1.0);
    Ok(built(n_agents, &terms))
}

/// `sum_{i,j} p_ij (sigma_i^+ sigma_j^- + sigma_i^- sigma_j^+)`.
pub fn h_opp(couplings: &CouplingMatrix, n_agents: usize) -> Result<Operator> {
    couplings.check_size(n_agents)?;
    let terms = pair_terms(
        couplings,
        &[
            (PauliKind::Plus, PauliKind::Minus),
            (PauliKind::Minus, PauliKind::Plus),
        ],
        1.0,
    );
    Ok(built(n_agents, &terms))
}

/// `h_coop(J) + h_opp(p)`.
pub fn h_total(j: &CouplingMatrix, p: &CouplingMatrix, n_agents: usize) -> Result<Operator> {
    let coop = h_coop(j, n_agents)?;
    let opp = h_opp(p, n_agents)?;
    coop.checked_add(&opp)
}

/// `B sum_i sigma_i^3`.
pub fn h_ext(b: f64, n_agents: usize) -> Result<Operator> {
    h_pi(&BlochVector::new(0.0, 0.0, b), n_agents)
}

/// Mean-field Heisenberg operator `(J/N) sum_{i,j} sum_alpha sigma_i^alpha sigma_j^alpha`.
pub fn h_meanfield(j: f64, n_agents: usize) -> Result<Operator> {
    check_agents(n_agents)?;
    if !j.is_finite() {
        return Err(Error::NonFinite("coupling J"));
    }
    let uniform = CouplingMatrix::uniform(n_agents, j / n_agents as f64)?;
    let terms = pair_terms(
        &uniform,
        &[
            (PauliKind::X, PauliKind::X),
            (PauliKind::Y, PauliKind::Y),
            (PauliKind::Z, PauliKind::Z),
        ],
        1.0,
    );
    Ok(built(n_agents, &terms))
}

/// Effective single-body Hamiltonian `f . sum_i sigma_i`.
pub fn h_pi(f: &BlochVector, n_agents: usize) -> Result<Operator> {
    check_agents(n_agents)?;
    if !f.is_finite() {
        return Err(Error::NonFinite("field vector"));
    }
    let local = field_dot_sigma(f);
    let m = local.matrix();
    let entries = [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]];
    let terms: Vec<LocalTerm> = (1..=n_agents)
        .map(|site| LocalTerm {
            coeff: c(1.0, 0.0),
            factors: vec![(site, entries)],
        })
        .collect();
    Ok(built(n_agents, &terms))
}

/// Single-site `f . sigma` as a 2x2 operator.
pub fn field_dot_sigma(f: &BlochVector) -> Operator {
    let m = DMatrix::from_row_slice(
        2,
        2,
        &[c(f.m3, 0.0), c(f.m1, -f.m2), c(f.m1, f.m2), c(-f.m3, 0.0)],
    );
    Operator::from_square(m)
}

/// Eigen-decomposition `H = V diag(lambda) V^dagger` of a Hermitian operator,
/// eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<C64>,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Columns are the orthonormal eigenvectors.
    pub fn eigenvectors(&self) -> &DMatrix<C64> {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |acc, l| acc.max(l.abs()))
    }

    /// `V diag(g(lambda)) V^dagger`.
    pub fn apply_function(&self, g: impl Fn(f64) -> C64) -> Operator {
        let d = DVector::from_iterator(self.dim(), self.eigenvalues.iter().map(|&l| g(l)));
        let v = &self.eigenvectors;
        let mut scaled = v.clone();
        for (k, mut col) in scaled.column_iter_mut().enumerate() {
            col *= d[k];
        }
        Operator::from_square(scaled * v.adjoint())
    }

    pub fn reconstruct(&self) -> Operator {
        self.apply_function(|l| c(l, 0.0))
    }

    /// `V^dagger A V`.
    pub fn to_eigenbasis(&self, a: &Operator) -> Result<DMatrix<C64>> {
        self.check_dim(a)?;
        Ok(self.eigenvectors.adjoint() * a.matrix() * &self.eigenvectors)
    }

    /// `V M V^dagger`.
    pub fn from_eigenbasis(&self, m: &DMatrix<C64>) -> Operator {
        Operator::from_square(&self.eigenvectors * m * self.eigenvectors.adjoint())
    }

    pub(crate) fn check_dim(&self, a: &Operator) -> Result<()> {
        if a.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: a.dim(),
            });
        }
        Ok(())
    }
}

/// Ascending eigenvalues and orthonormal eigenvectors of a Hermitian operator.
pub fn spectrum(h: &Operator) -> Result<Spectrum> {
    h.require_hermitian()?;
    // symmetrize away sub-tolerance asymmetry before the solver sees it
    let m = h.matrix();
    let sym = (m + m.adjoint()) * c(0.5, 0.0);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let eigenvectors =
        DMatrix::from_fn(m.nrows(), m.ncols(), |r, k| eig.eigenvectors[(r, order[k])]);
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}
