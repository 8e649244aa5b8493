//! Mean-field self-consistency for the collective magnetization `m`.
//!
//! In the thermodynamic limit the magnetization norm solves
//! `tanh(J m beta) = -m`. `m = 0` always solves it; a second root in `(0, 1)`
//! exists exactly when `J beta < -1`, i.e. below `T_c = -J`.

use std::ops::{Add, Mul, Sub};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spin_algebra::Axis;

/// Lower end of the root bracket; the trivial root sits at 0.
pub const BRACKET_FLOOR: f64 = 1e-12;
pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 10_000;

/// Below this `|J m beta|` the m -> 0 form of the KMS axis residual uses series.
const SERIES_SWITCH: f64 = 1e-4;

/// Real 3-vector of spin expectations, or any field along the spin axes.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BlochVector {
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
}

impl BlochVector {
    pub const fn new(m1: f64, m2: f64, m3: f64) -> Self {
        BlochVector { m1, m2, m3 }
    }

    pub fn along(axis: Axis, length: f64) -> Self {
        let mut v = BlochVector::default();
        match axis {
            Axis::X => v.m1 = length,
            Axis::Y => v.m2 = length,
            Axis::Z => v.m3 = length,
        }
        v
    }

    pub fn components(&self) -> [f64; 3] {
        [self.m1, self.m2, self.m3]
    }

    pub fn component(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.m1,
            Axis::Y => self.m2,
            Axis::Z => self.m3,
        }
    }

    pub fn norm(&self) -> f64 {
        self.m1.hypot(self.m2).hypot(self.m3)
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.m1 * other.m1 + self.m2 * other.m2 + self.m3 * other.m3
    }

    pub fn is_finite(&self) -> bool {
        self.m1.is_finite() && self.m2.is_finite() && self.m3.is_finite()
    }

    pub fn normalized(&self) -> Option<BlochVector> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| *self * (1.0 / n))
    }
}

impl From<[f64; 3]> for BlochVector {
    fn from(v: [f64; 3]) -> Self {
        BlochVector::new(v[0], v[1], v[2])
    }
}

impl Add for BlochVector {
    type Output = BlochVector;
    fn add(self, o: BlochVector) -> BlochVector {
        BlochVector::new(self.m1 + o.m1, self.m2 + o.m2, self.m3 + o.m3)
    }
}

impl Sub for BlochVector {
    type Output = BlochVector;
    fn sub(self, o: BlochVector) -> BlochVector {
        BlochVector::new(self.m1 - o.m1, self.m2 - o.m2, self.m3 - o.m3)
    }
}

impl Mul<f64> for BlochVector {
    type Output = BlochVector;
    fn mul(self, s: f64) -> BlochVector {
        BlochVector::new(self.m1 * s, self.m2 * s, self.m3 * s)
    }
}

/// One solved point of the phase diagram.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanFieldPoint {
    pub j: f64,
    pub beta: f64,
    pub m_c: f64,
    pub converged: bool,
    /// `|phi(m_c)|`.
    pub residual: f64,
    pub iterations: usize,
}

impl MeanFieldPoint {
    pub fn temperature(&self) -> f64 {
        1.0 / self.beta
    }
}

/// `m + tanh(J m beta)`; its positive roots solve the self-consistency equation.
pub fn phi(m: f64, j: f64, beta: f64) -> f64 {
    m + (j * m * beta).tanh()
}

/// `d phi / d m = 1 + J beta / cosh^2(J beta m)`.
pub fn phi_prime(m: f64, j: f64, beta: f64) -> f64 {
    let ch = (j * beta * m).cosh();
    1.0 + j * beta / (ch * ch)
}

/// Left-hand side of the KMS condition for `A = B = sigma^1` in terms of the
/// Bloch vector:
///
/// `sinh(J m beta) (m2^2 + m3^2) [cosh(J m beta)/m + sinh(J m beta)/m^2]`
///
/// with `m = |mvec|`. The `1/m` and `1/m^2` singularities are removable; near
/// `m = 0` the expression is evaluated through `s = sinh(x)/m` so it extends
/// continuously to `(m2^2 + m3^2) J beta (1 + J beta)` at `m = 0`.
pub fn kms_consistency_lhs(mvec: &BlochVector, j: f64, beta: f64) -> f64 {
    let transverse = mvec.m2 * mvec.m2 + mvec.m3 * mvec.m3;
    if transverse == 0.0 {
        return 0.0;
    }
    let m = mvec.norm();
    let jb = j * beta;
    let x = jb * m;
    if x.abs() < SERIES_SWITCH {
        // s = sinh(x) / m; sinh(x) T [cosh/m + sinh/m^2] = T s (cosh + s)
        let x2 = x * x;
        let (s, ch) = (jb * (1.0 + x2 / 6.0), 1.0 + x2 / 2.0);
        return transverse * s * (ch + s);
    }
    // cosh/m + sinh/m^2 = (cosh/m^2) (m + tanh): the bracket carries the
    // self-consistency residual as a factor instead of a difference of two
    // terms of size cosh(x)/m, which would cancel catastrophically.
    let residual = m + x.tanh();
    if residual == 0.0 {
        // exact zero factor; sinh/cosh may overflow for large |x|
        return 0.0;
    }
    let s = x.sinh() / m;
    transverse * s * x.cosh() * (residual / m)
}

/// Solve `tanh(J m beta) = -m` for the non-trivial root.
///
/// Returns `m_c = 0` immediately when `J beta >= -1`. Otherwise the bracket
/// `[1e-12, 1]` is bisected down to `tol` and the midpoint polished with
/// Newton steps that are kept inside the bracket, then fixed-point steps
/// `m <- -tanh(J m beta)` while they lower the residual. A bracket without a sign
/// change (only possible at `J beta` within rounding of `-1`) yields a
/// non-converged point with `m_c = 0`.
pub fn solve_m(j: f64, beta: f64, tol: f64) -> Result<MeanFieldPoint> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::NonPositiveBeta(beta));
    }
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::NonPositiveTolerance(tol));
    }
    if !j.is_finite() {
        return Err(Error::NonFinite("coupling J"));
    }
    let mut point = MeanFieldPoint {
        j,
        beta,
        m_c: 0.0,
        converged: true,
        residual: 0.0,
        iterations: 0,
    };
    if j * beta >= -1.0 {
        return Ok(point);
    }

    let f = |m: f64| phi(m, j, beta);
    let (mut lo, mut hi) = (BRACKET_FLOOR, 1.0);
    let (f_lo, f_hi) = (f(lo), f(hi));
    // phi(1) = 1 + tanh(J beta) > 0, but rounds to 0 once tanh saturates
    if !(f_lo < 0.0 && f_hi >= 0.0) {
        point.converged = false;
        point.residual = f_lo.abs();
        return Ok(point);
    }

    let mut iterations = 0;
    while hi - lo >= tol && iterations < MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }

    let mut m = 0.5 * (lo + hi);
    if m >= 1.0 {
        // keep the Newton start strictly inside the bracket
        m = 1.0 - f64::EPSILON / 2.0;
    }
    let mut fm = f(m);
    while fm.abs() > 0.0 && iterations < MAX_ITERATIONS {
        let d = phi_prime(m, j, beta);
        if d == 0.0 || !d.is_finite() {
            break;
        }
        let next = m - fm / d;
        if !(next > lo && next < hi) {
            break;
        }
        let f_next = f(next);
        iterations += 1;
        if f_next.abs() >= fm.abs() {
            break;
        }
        m = next;
        fm = f_next;
    }

    // Final fixed-point steps m <- -tanh(J beta m): a strong contraction once
    // tanh saturates, where it reaches the double with zero evaluated
    // residual (possibly 1.0, the correctly rounded root) that Newton steps
    // confined to the open bracket cannot.
    for _ in 0..16 {
        if fm == 0.0 {
            break;
        }
        let next = -(j * beta * m).tanh();
        if !(next > lo && next <= hi) {
            break;
        }
        let f_next = f(next);
        if f_next.abs() >= fm.abs() {
            break;
        }
        m = next;
        fm = f_next;
        iterations += 1;
    }

    point.m_c = m;
    point.residual = fm.abs();
    point.iterations = iterations;
    point.converged = point.residual <= tol;
    Ok(point)
}

/// `T_c = -J`; only defined for cooperative coupling `J < 0`.
pub fn critical_temperature(j: f64) -> Result<f64> {
    if !(j < 0.0) {
        return Err(Error::NonNegativeCoupling(j));
    }
    Ok(-j)
}

/// `solve_m` at each temperature of the grid (`beta = 1/T`), in grid order.
pub fn phase_curve(j: f64, temperatures: &[f64]) -> Result<Vec<MeanFieldPoint>> {
    phase_curve_with_tolerance(j, temperatures, DEFAULT_TOLERANCE)
}

pub fn phase_curve_with_tolerance(
    j: f64,
    temperatures: &[f64],
    tol: f64,
) -> Result<Vec<MeanFieldPoint>> {
    critical_temperature(j)?;
    temperatures
        .par_iter()
        .map(|&t| {
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::NonPositiveBeta(1.0 / t));
            }
            solve_m(j, 1.0 / t, tol)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: scan phi on a uniform grid for the first sign
    /// change, then bisect the bracketing cell.
    fn grid_scan_root(j: f64, beta: f64, step: f64) -> f64 {
        let steps = (1.0 / step).round() as usize;
        let mut prev_m = step;
        let mut prev = phi(prev_m, j, beta);
        for k in 2..=steps {
            let m = k as f64 * step;
            let v = phi(m, j, beta);
            if prev < 0.0 && v >= 0.0 {
                let (mut lo, mut hi) = (prev_m, m);
                while hi - lo > 1e-14 {
                    let mid = 0.5 * (lo + hi);
                    if phi(mid, j, beta) < 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                return 0.5 * (lo + hi);
            }
            prev_m = m;
            prev = v;
        }
        0.0
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(0.0, -1.0, 2.0), 0.0);
        assert_eq!(phi(0.0, 3.0, 0.1), 0.0);
        // 1 + tanh(-2)
        assert!((phi(1.0, -1.0, 2.0) - 0.035_972_419_924_183_1).abs() < 1e-15);
        assert_eq!(phi(0.37, 0.0, 4.0), 0.37);
    }

    #[test]
    fn phi_prime_examples() {
        assert_eq!(phi_prime(0.0, -1.0, 2.0), -1.0);
        assert_eq!(phi_prime(0.0, -1.0, 0.5), 0.5);
    }

    proptest! {
        #[test]
        fn phi_prime_matches_central_difference(m in 0.0..1.0f64, j in -3.0..3.0f64, beta in 0.01..5.0f64) {
            let h = 1e-5;
            let fd = (phi(m + h, j, beta) - phi(m - h, j, beta)) / (2.0 * h);
            prop_assert!((phi_prime(m, j, beta) - fd).abs() <= 1e-6);
        }

        #[test]
        fn solved_root_is_a_root(j in -4.0..-0.1f64, beta in 0.05..20.0f64) {
            let p = solve_m(j, beta, 1e-12).unwrap();
            prop_assert!(p.m_c >= 0.0 && p.m_c <= 1.0);
            if j * beta >= -1.0 {
                prop_assert_eq!(p.m_c, 0.0);
            } else if p.converged {
                prop_assert!(p.m_c > 0.0);
                prop_assert!(phi(p.m_c, j, beta).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn consistency_axis_one_vanishes() {
        for m1 in [-0.9, -0.1, 0.0, 0.3, 1.0] {
            assert_eq!(
                kms_consistency_lhs(&BlochVector::new(m1, 0.0, 0.0), -1.0, 2.0),
                0.0
            );
        }
    }

    #[test]
    fn consistency_scalar_example() {
        // sinh(-0.5) * 0.25 * (cosh(-0.5)/0.5 + sinh(-0.5)/0.25), numpy oracle
        let v = kms_consistency_lhs(&BlochVector::new(0.0, 0.5, 0.0), -1.0, 1.0);
        assert!((v - (-0.022_259_981_003_328_44)).abs() < 1e-15, "{v}");
    }

    #[test]
    fn consistency_vanishes_at_solved_root() {
        let p = solve_m(-1.0, 2.0, 1e-12).unwrap();
        let v = kms_consistency_lhs(&BlochVector::new(0.0, 0.0, p.m_c), -1.0, 2.0);
        assert!(v.abs() <= 1e-12, "{v}");
    }

    #[test]
    fn consistency_is_continuous_at_zero() {
        let j = -1.3;
        let beta = 0.7;
        let dir = BlochVector::new(0.2, 0.5, -0.4).normalized().unwrap();
        let limit_per_t = j * beta * (1.0 + j * beta);
        let t_frac = (dir.m2 * dir.m2 + dir.m3 * dir.m3) / 1.0;
        for scale in [1e-5, 1e-8, 1e-12] {
            let v = dir * scale;
            let expect = t_frac * scale * scale * limit_per_t;
            let got = kms_consistency_lhs(&v, j, beta);
            assert!(
                (got - expect).abs() <= 1e-6 * expect.abs().max(1e-300) + 1e-18,
                "{scale}: {got} vs {expect}"
            );
        }
        // both branches agree across the switch-over
        let below = dir * (0.999 * SERIES_SWITCH / (j * beta).abs());
        let above = dir * (1.001 * SERIES_SWITCH / (j * beta).abs());
        let slope = |v: &BlochVector| kms_consistency_lhs(v, j, beta) / v.norm().powi(2);
        assert!((slope(&below) - slope(&above)).abs() < 1e-8);
    }

    #[test]
    fn solve_m_examples() {
        let p = solve_m(-1.0, 0.5, 1e-12).unwrap();
        assert_eq!((p.m_c, p.converged, p.iterations), (0.0, true, 0));

        let p = solve_m(-1.0, 2.0, 1e-12).unwrap();
        assert!(p.converged);
        // numpy grid-scan + bisection oracle
        assert!((p.m_c - 0.957_504_024_077_270_1).abs() < 1e-10);
        assert!((p.m_c - grid_scan_root(-1.0, 2.0, 1e-6)).abs() < 1e-10);

        let p = solve_m(-1.0, 10.0, 1e-12).unwrap();
        assert!(p.m_c > 0.9999);
    }

    #[test]
    fn saturated_root_rounds_to_one() {
        for beta in [20.0, 25.0, 100.0, 1e4] {
            let p = solve_m(-1.0, beta, 1e-12).unwrap();
            assert!(p.converged, "{beta}");
            // the exact root is within 1e-17 of 1, so 1.0 is its rounding
            assert_eq!(p.m_c, 1.0);
            assert_eq!(p.residual, 0.0);
            let v = BlochVector::new(0.0, 0.0, p.m_c);
            assert_eq!(kms_consistency_lhs(&v, -1.0, beta), 0.0);
        }
        let m10 = solve_m(-1.0, 10.0, 1e-12).unwrap().m_c;
        let m20 = solve_m(-1.0, 20.0, 1e-12).unwrap().m_c;
        assert!(m20 > m10);
    }

    #[test]
    fn strictly_increasing_in_beta() {
        let betas: Vec<f64> = (0..60).map(|k| 1.01 + 0.1 * k as f64).collect();
        let ms: Vec<f64> = betas
            .iter()
            .map(|&b| solve_m(-1.0, b, 1e-12).unwrap().m_c)
            .collect();
        assert!(ms.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn solve_m_rejects_bad_input() {
        assert_eq!(solve_m(-1.0, 0.0, 1e-12), Err(Error::NonPositiveBeta(0.0)));
        assert_eq!(
            solve_m(-1.0, -2.0, 1e-12),
            Err(Error::NonPositiveBeta(-2.0))
        );
        assert_eq!(
            solve_m(-1.0, 1.0, 0.0),
            Err(Error::NonPositiveTolerance(0.0))
        );
    }

    #[test]
    fn solver_agrees_with_grid_oracle() {
        for &(j, beta) in &[(-1.0, 1.2), (-0.5, 3.0), (-2.0, 1.0), (-1.0, 5.0)] {
            let p = solve_m(j, beta, 1e-12).unwrap();
            assert!(
                (p.m_c - grid_scan_root(j, beta, 1e-6)).abs() < 1e-10,
                "{j} {beta}"
            );
        }
    }

    #[test]
    fn critical_temperature_examples() {
        assert_eq!(critical_temperature(-1.0), Ok(1.0));
        assert_eq!(critical_temperature(-2.5), Ok(2.5));
        assert_eq!(
            critical_temperature(0.3),
            Err(Error::NonNegativeCoupling(0.3))
        );
        assert!(critical_temperature(0.0).is_err());
    }

    #[test]
    fn phase_curve_examples() {
        let pts = phase_curve(-1.0, &[0.5, 0.9, 1.0, 1.5]).unwrap();
        let ms: Vec<f64> = pts.iter().map(|p| p.m_c).collect();
        assert!(ms[0] > 0.0 && ms[1] > 0.0);
        assert_eq!(&ms[2..], &[0.0, 0.0]);
        for (p, t) in pts.iter().zip([0.5, 0.9, 1.0, 1.5]) {
            assert!((p.m_c - grid_scan_root(-1.0, 1.0 / t, 1e-6)).abs() < 1e-10);
        }

        let near = phase_curve(-1.0, &[1.0 - 1e-6]).unwrap()[0];
        assert!(near.converged);
        assert!(near.m_c > 0.0 && near.m_c < 0.01, "{}", near.m_c);

        let grid: Vec<f64> = (1..=40).map(|k| k as f64 * 0.04).collect();
        let curve = phase_curve(-1.0, &grid).unwrap();
        assert!(curve.windows(2).all(|w| w[1].m_c <= w[0].m_c));
        assert!(phase_curve(0.5, &grid).is_err());
        assert!(phase_curve(-1.0, &[0.5, -1.0]).is_err());
    }
}
