//! Single-agent Pauli algebra and its embedding into the N-agent space.
//!
//! An agent is a two-level system with basis `e+ = (1, 0)` ("yes") and
//! `e- = (0, 1)` ("no"). The N-agent space is the tensor product of N copies
//! of C^2 in lexicographic order with site 1 as the most significant factor,
//! so basis index `k` has agent `j` in state `e-` iff bit `N - j` of `k` is set.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Entrywise tolerance used to decide the Hermiticity flag of an operator.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance accepted on user supplied normalizations.
pub const INPUT_NORM_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_AGENTS: usize = 12;

static MAX_AGENTS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_AGENTS);

/// Current cap on the number of agents in dense constructions.
pub fn max_agents() -> usize {
    MAX_AGENTS.load(Ordering::Relaxed)
}

/// Change the process-wide agent cap. Values below 1 are clamped to 1.
pub fn set_max_agents(cap: usize) {
    MAX_AGENTS.store(cap.max(1), Ordering::Relaxed);
}

pub(crate) fn check_agents(n_agents: usize) -> Result<()> {
    if n_agents == 0 {
        return Err(Error::NoAgents);
    }
    let cap = max_agents();
    if n_agents > cap {
        return Err(Error::DimensionCapExceeded { n_agents, cap });
    }
    Ok(())
}

#[inline]
pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// The six single-agent operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliKind {
    X,
    Y,
    Z,
    Plus,
    Minus,
    Id,
}

impl PauliKind {
    pub const ALL: [PauliKind; 6] = [
        PauliKind::X,
        PauliKind::Y,
        PauliKind::Z,
        PauliKind::Plus,
        PauliKind::Minus,
        PauliKind::Id,
    ];

    /// Row-major 2x2 entries.
    pub fn entries(self) -> [[C64; 2]; 2] {
        let o = c(0.0, 0.0);
        let one = c(1.0, 0.0);
        match self {
            PauliKind::X => [[o, one], [one, o]],
            PauliKind::Y => [[o, c(0.0, -1.0)], [c(0.0, 1.0), o]],
            PauliKind::Z => [[one, o], [o, -one]],
            PauliKind::Plus => [[o, one], [o, o]],
            PauliKind::Minus => [[o, o], [one, o]],
            PauliKind::Id => [[one, o], [o, one]],
        }
    }

    pub fn is_hermitian(self) -> bool {
        !matches!(self, PauliKind::Plus | PauliKind::Minus)
    }
}

/// Spin axis 1, 2, 3 (x, y, z).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn from_index(alpha: usize) -> Result<Axis> {
        match alpha {
            1 => Ok(Axis::X),
            2 => Ok(Axis::Y),
            3 => Ok(Axis::Z),
            other => Err(Error::InvalidAxis(other)),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Axis::X => 1,
            Axis::Y => 2,
            Axis::Z => 3,
        }
    }

    pub fn pauli(self) -> PauliKind {
        match self {
            Axis::X => PauliKind::X,
            Axis::Y => PauliKind::Y,
            Axis::Z => PauliKind::Z,
        }
    }
}

impl serde::Serialize for Axis {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.index() as u8)
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Dense complex square matrix together with a Hermiticity flag.
///
/// The flag is always derived from the entries at construction time, so it
/// cannot disagree with the matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    matrix: DMatrix<C64>,
    hermitian: bool,
}

impl Operator {
    pub fn new(matrix: DMatrix<C64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        if matrix.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        Ok(Self::from_square(matrix))
    }

    pub(crate) fn from_square(matrix: DMatrix<C64>) -> Self {
        let hermitian = hermitian_deviation(&matrix) <= HERMITIAN_TOL;
        Operator { matrix, hermitian }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d = DVector::from_iterator(diag.len(), diag.iter().map(|&x| c(x, 0.0)));
        Self::from_square(DMatrix::from_diagonal(&d))
    }

    pub fn identity(dim: usize) -> Self {
        Operator {
            matrix: DMatrix::identity(dim, dim),
            hermitian: true,
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Operator {
            matrix: DMatrix::zeros(dim, dim),
            hermitian: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.matrix
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn hermitian_deviation(&self) -> f64 {
        hermitian_deviation(&self.matrix)
    }

    pub(crate) fn require_hermitian(&self) -> Result<()> {
        if self.hermitian {
            Ok(())
        } else {
            Err(Error::NotHermitian {
                deviation: self.hermitian_deviation(),
            })
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.matrix[(row, col)]
    }

    pub fn adjoint(&self) -> Operator {
        Operator {
            matrix: self.matrix.adjoint(),
            hermitian: self.hermitian,
        }
    }

    pub fn scale(&self, factor: C64) -> Operator {
        Self::from_square(&self.matrix * factor)
    }

    pub fn scale_real(&self, factor: f64) -> Operator {
        Operator {
            matrix: &self.matrix * c(factor, 0.0),
            hermitian: self.hermitian,
        }
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        assert_eq!(self.dim(), other.dim(), "operator dimension mismatch");
        self.matrix
            .iter()
            .zip(other.matrix.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn check_same_dim(&self, other: &Operator) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Operator) -> Result<Operator> {
        self.check_same_dim(other)?;
        Ok(Self::from_square(&self.matrix * &other.matrix))
    }

    pub fn checked_add(&self, other: &Operator) -> Result<Operator> {
        self.check_same_dim(other)?;
        Ok(Self::from_square(&self.matrix + &other.matrix))
    }

    pub fn checked_sub(&self, other: &Operator) -> Result<Operator> {
        self.check_same_dim(other)?;
        Ok(Self::from_square(&self.matrix - &other.matrix))
    }

    /// `M v` without renormalization.
    pub fn apply(&self, state: &StateVector) -> Result<DVector<C64>> {
        if self.dim() != state.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: state.dim(),
            });
        }
        Ok(&self.matrix * state.amplitudes())
    }

    /// `<v, M v>`.
    pub fn expectation(&self, state: &StateVector) -> Result<C64> {
        let mv = self.apply(state)?;
        Ok(state.amplitudes().dotc(&mv))
    }
}

fn hermitian_deviation(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

impl<'a> Mul<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn mul(self, rhs: &'a Operator) -> Operator {
        self.checked_mul(rhs).expect("operator dimension mismatch")
    }
}

impl<'a> Add<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn add(self, rhs: &'a Operator) -> Operator {
        self.checked_add(rhs).expect("operator dimension mismatch")
    }
}

impl<'a> Sub<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn sub(self, rhs: &'a Operator) -> Operator {
        self.checked_sub(rhs).expect("operator dimension mismatch")
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        self.scale_real(-1.0)
    }
}

/// Unit-norm complex vector.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: DVector<C64>,
}

impl StateVector {
    /// Accepts vectors whose norm is 1 within [`INPUT_NORM_TOL`] and
    /// renormalizes them exactly.
    pub fn new(amplitudes: DVector<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        let norm_sq = amplitudes.norm_squared();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > INPUT_NORM_TOL {
            return Err(Error::Normalization { norm_sq });
        }
        Ok(StateVector {
            amplitudes: amplitudes / c(norm_sq.sqrt(), 0.0),
        })
    }

    /// Basis vector `index` of a `dim`-dimensional space.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut v = DVector::zeros(dim);
        v[index] = c(1.0, 0.0);
        StateVector { amplitudes: v }
    }

    /// `e+`, the "yes" state.
    pub fn up() -> Self {
        Self::basis(2, 0)
    }

    /// `e-`, the "no" state.
    pub fn down() -> Self {
        Self::basis(2, 1)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// Rank-one density matrix `|v><v|`.
    pub fn projector(&self) -> Operator {
        Operator::from_square(&self.amplitudes * self.amplitudes.adjoint())
    }
}

/// Return the exact 2x2 Pauli-type matrix.
pub fn pauli(kind: PauliKind) -> Operator {
    let e = kind.entries();
    Operator {
        matrix: DMatrix::from_row_slice(2, 2, &[e[0][0], e[0][1], e[1][0], e[1][1]]),
        hermitian: kind.is_hermitian(),
    }
}

/// `a e+ + b e-`.
pub fn agent_state(a: C64, b: C64) -> Result<StateVector> {
    let norm_sq = a.norm_sqr() + b.norm_sqr();
    if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > INPUT_NORM_TOL {
        return Err(Error::Normalization { norm_sq });
    }
    StateVector::new(DVector::from_vec(vec![a, b]))
}

/// Bit position of 1-based `site` in a basis index of an `n`-agent space.
#[inline]
pub(crate) fn site_shift(site: usize, n_agents: usize) -> usize {
    n_agents - site
}

/// A product of single-site 2x2 factors times a scalar. Factors are applied
/// right to left, so `[(i, A), (j, B)]` means `A_i B_j`.
#[derive(Clone, Debug)]
pub(crate) struct LocalTerm {
    pub coeff: C64,
    pub factors: Vec<(usize, [[C64; 2]; 2])>,
}

/// Build the dense matrix of a sum of local terms by acting on every basis
/// state. Cost is `O(2^N * terms)` instead of Kronecker products.
pub(crate) fn build_local_sum(n_agents: usize, terms: &[LocalTerm]) -> DMatrix<C64> {
    let dim = 1usize << n_agents;
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    let mut current: Vec<(usize, C64)> = Vec::with_capacity(4);
    let mut next: Vec<(usize, C64)> = Vec::with_capacity(4);
    for col in 0..dim {
        for term in terms {
            if term.coeff == c(0.0, 0.0) {
                continue;
            }
            current.clear();
            current.push((col, term.coeff));
            for &(site, ref entries) in term.factors.iter().rev() {
                let shift = site_shift(site, n_agents);
                next.clear();
                for &(idx, amp) in &current {
                    let bit = (idx >> shift) & 1;
                    for (row_bit, row) in entries.iter().enumerate() {
                        let e = row[bit];
                        if e != c(0.0, 0.0) {
                            let out = (idx & !(1 << shift)) | (row_bit << shift);
                            next.push((out, amp * e));
                        }
                    }
                }
                std::mem::swap(&mut current, &mut next);
            }
            for &(row, amp) in &current {
                m[(row, col)] += amp;
            }
        }
    }
    m
}

/// `op` on agent `site` (1-based), identity on all the others.
pub fn embed(op: &Operator, site: usize, n_agents: usize) -> Result<Operator> {
    if op.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: op.dim(),
        });
    }
    check_agents(n_agents)?;
    if site == 0 || site > n_agents {
        return Err(Error::SiteOutOfRange { site, n_agents });
    }
    let m = op.matrix();
    let entries = [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]];
    let term = LocalTerm {
        coeff: c(1.0, 0.0),
        factors: vec![(site, entries)],
    };
    Ok(Operator {
        matrix: build_local_sum(n_agents, &[term]),
        hermitian: op.is_hermitian(),
    })
}

/// Kronecker product of the factors, site 1 first.
pub fn product_state(factors: &[StateVector]) -> Result<StateVector> {
    let (first, rest) = factors.split_first().ok_or(Error::EmptyFactorList)?;
    let mut acc = first.amplitudes.clone();
    for f in rest {
        acc = acc.kronecker(&f.amplitudes);
    }
    StateVector::new(acc)
}

/// `AB - BA`.
pub fn commutator(a: &Operator, b: &Operator) -> Result<Operator> {
    let ab = a.checked_mul(b)?;
    let ba = b.checked_mul(a)?;
    ab.checked_sub(&ba)
}

/// `AB + BA`.
pub fn anticommutator(a: &Operator, b: &Operator) -> Result<Operator> {
    let ab = a.checked_mul(b)?;
    let ba = b.checked_mul(a)?;
    ab.checked_add(&ba)
}

/// `sum_i sigma_i^alpha` over all N agents.
pub fn total_spin(axis: Axis, n_agents: usize) -> Result<Operator> {
    check_agents(n_agents)?;
    let entries = axis.pauli().entries();
    let terms: Vec<LocalTerm> = (1..=n_agents)
        .map(|site| LocalTerm {
            coeff: c(1.0, 0.0),
            factors: vec![(site, entries)],
        })
        .collect();
    Ok(Operator {
        matrix: build_local_sum(n_agents, &terms),
        hermitian: true,
    })
}

/// `(1/N) sum_i sigma_i^alpha`.
pub fn mean_spin(axis: Axis, n_agents: usize) -> Result<Operator> {
    Ok(total_spin(axis, n_agents)?.scale_real(1.0 / n_agents as f64))
}

/// `sigma^alpha` on one site, tagged with its position.
#[derive(Debug, Clone)]
pub struct SiteObservable {
    pub site: usize,
    pub axis: Axis,
    pub operator: Operator,
}

/// All `3N` single-site Pauli observables, ordered by site then axis.
pub fn single_site_paulis(n_agents: usize) -> Result<Vec<SiteObservable>> {
    check_agents(n_agents)?;
    let mut out = Vec::with_capacity(3 * n_agents);
    for site in 1..=n_agents {
        for axis in Axis::ALL {
            out.push(SiteObservable {
                site,
                axis,
                operator: embed(&pauli(axis.pauli()), site, n_agents)?,
            });
        }
    }
    Ok(out)
}

/// Worst entrywise error of one algebraic identity.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub name: String,
    pub max_error: f64,
}

/// Evaluate the single-agent ladder/Pauli relations, the basis actions on
/// `e+`/`e-`, and cross-site commutation for every `N <= max_n`.
pub fn identity_checks(max_n: usize) -> Result<Vec<IdentityCheck>> {
    check_agents(max_n)?;
    let p = pauli(PauliKind::Plus);
    let m = pauli(PauliKind::Minus);
    let x = pauli(PauliKind::X);
    let y = pauli(PauliKind::Y);
    let zop = pauli(PauliKind::Z);
    let id = Operator::identity(2);
    let zero = Operator::zeros(2);
    let mut out = Vec::new();
    let mut push = |name: &str, a: &Operator, b: &Operator| {
        out.push(IdentityCheck {
            name: name.to_string(),
            max_error: a.max_abs_diff(b),
        });
    };
    push("(s+)^2 = 0", &(&p * &p), &zero);
    push("(s-)^2 = 0", &(&m * &m), &zero);
    push(
        "[s+, s3] = -2 s+",
        &commutator(&p, &zop)?,
        &p.scale_real(-2.0),
    );
    push(
        "[s-, s3] = 2 s-",
        &commutator(&m, &zop)?,
        &m.scale_real(2.0),
    );
    push("[s+, s-] = s3", &commutator(&p, &m)?, &zop);
    push("{s+, s-} = 1", &anticommutator(&p, &m)?, &id);
    push("s1 = s+ + s-", &(&p + &m), &x);
    push("s2 = i(s- - s+)", &(&m - &p).scale(c(0.0, 1.0)), &y);

    let (up, down) = (StateVector::up(), StateVector::down());
    let vec_err = |op: &Operator, v: &StateVector, expected: DVector<C64>| -> Result<f64> {
        Ok((op.apply(v)? - expected)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max))
    };
    let basis_actions = [
        ("s3 e+ = e+", vec_err(&zop, &up, up.amplitudes().clone())?),
        (
            "s3 e- = -e-",
            vec_err(&zop, &down, -down.amplitudes().clone())?,
        ),
        ("s+ e- = e+", vec_err(&p, &down, up.amplitudes().clone())?),
        ("s- e+ = e-", vec_err(&m, &up, down.amplitudes().clone())?),
        ("s+ e+ = 0", vec_err(&p, &up, DVector::zeros(2))?),
        ("s- e- = 0", vec_err(&m, &down, DVector::zeros(2))?),
    ];
    for (name, err) in basis_actions {
        out.push(IdentityCheck {
            name: name.to_string(),
            max_error: err,
        });
    }

    let kinds = [
        PauliKind::X,
        PauliKind::Y,
        PauliKind::Z,
        PauliKind::Plus,
        PauliKind::Minus,
    ];
    for n in 2..=max_n {
        let mut worst = 0.0_f64;
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                for &a in &kinds {
                    let ea = embed(&pauli(a), i, n)?;
                    for &b in &kinds {
                        let eb = embed(&pauli(b), j, n)?;
                        worst = worst.max(commutator(&ea, &eb)?.max_abs());
                    }
                }
            }
        }
        out.push(IdentityCheck {
            name: format!("[s_i^a, s_j^b] = 0, i != j, N = {n}"),
            max_error: worst,
        });
    }
    Ok(out)
}
