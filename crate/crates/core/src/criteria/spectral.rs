//! Spectral radius of small dense matrices.
//!
//! `n <= 2` uses the closed-form quadratic. Larger entrywise-positive
//! matrices use power iteration with Collatz–Wielandt bounds, which bracket
//! the Perron root from both sides at every step. Everything else goes to a
//! real Schur decomposition: roots of the characteristic polynomial lose
//! about half their digits at a double eigenvalue, Schur does not.
//!
//! [`characteristic_polynomial`] and [`polynomial_roots`] remain available
//! as an independent cross-check for small matrices with simple spectrum.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

pub const POWER_MAX_ITER: usize = 10_000;
pub const POWER_TOL: f64 = 1e-12;

/// Power iteration ran out of steps; the Perron root lies in `[lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("spectral radius not resolved after {iterations} iterations; bracket [{lower}, {upper}]")]
pub struct SpectralFailure {
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
}

pub fn spectral_radius(m: &DMatrix<f64>) -> Result<f64, SpectralFailure> {
    assert!(m.is_square(), "spectral radius of a non-square matrix");
    if m.iter().any(|v| !v.is_finite()) {
        return Err(SpectralFailure { lower: 0.0, upper: f64::INFINITY, iterations: 0 });
    }
    let n = m.nrows();
    match n {
        0 => Ok(0.0),
        1 => Ok(m[(0, 0)].abs()),
        2 => Ok(radius_2x2(m)),
        _ if n > 4 && m.iter().all(|&v| v > 0.0) => perron_root(m, POWER_MAX_ITER, POWER_TOL),
        _ => Ok(schur_radius(m)),
    }
}

fn schur_radius(m: &DMatrix<f64>) -> f64 {
    m.clone().complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn radius_2x2(m: &DMatrix<f64>) -> f64 {
    let half_tr = 0.5 * (m[(0, 0)] + m[(1, 1)]);
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let disc = half_tr * half_tr - det;
    if disc >= 0.0 {
        let s = disc.sqrt();
        // larger-magnitude root first, the other from det to avoid cancellation
        let big = half_tr + half_tr.signum() * s;
        big.abs().max(if big != 0.0 { (det / big).abs() } else { 0.0 })
    } else {
        det.sqrt()
    }
}

/// Perron root of a nonnegative matrix by power iteration.
///
/// For a positive vector `v`, `min_i (Mv)_i / v_i <= ρ(M) <= max_i (Mv)_i / v_i`.
/// Iterates until the bracket is narrower than `tol · max(1, ρ)`. Matrices
/// with zero entries are shifted by the identity so that irreducible ones
/// become primitive; reducible ones may not close the bracket and report
/// failure.
pub fn perron_root(m: &DMatrix<f64>, max_iter: usize, tol: f64) -> Result<f64, SpectralFailure> {
    let n = m.nrows();
    if m.iter().any(|&v| v < 0.0 || !v.is_finite()) {
        return Err(SpectralFailure { lower: 0.0, upper: f64::INFINITY, iterations: 0 });
    }
    let shift = if m.iter().all(|&v| v > 0.0) { 0.0 } else { 1.0 };
    let mut a = m.clone();
    for i in 0..n {
        a[(i, i)] += shift;
    }
    let mut v = nalgebra::DVector::from_element(n, 1.0 / n as f64);
    let (mut lower, mut upper) = (0.0, f64::INFINITY);
    for it in 1..=max_iter {
        let w = &a * &v;
        let mut lo = f64::INFINITY;
        let mut hi: f64 = 0.0;
        for i in 0..n {
            let r = w[i] / v[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        lower = (lo - shift).max(0.0);
        upper = hi - shift;
        if upper - lower <= tol * upper.max(1.0) {
            return Ok(0.5 * (lower + upper));
        }
        let s = w.sum();
        if !(s > 0.0) {
            return Err(SpectralFailure { lower, upper, iterations: it });
        }
        v = w / s;
        if v.iter().any(|&c| c <= 0.0) {
            return Err(SpectralFailure { lower, upper, iterations: it });
        }
    }
    Err(SpectralFailure { lower, upper, iterations: max_iter })
}

/// Monic characteristic polynomial `det(λI - M)`, coefficients from the
/// constant term up: `[c_0, c_1, ..., c_{n-1}, 1]`.
pub fn characteristic_polynomial(m: &DMatrix<f64>) -> Vec<f64> {
    // Faddeev–LeVerrier: M_k = M (M_{k-1} + c_{n-k+1} I), c_{n-k} = -tr(M_k)/k
    let n = m.nrows();
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    let mut mk = DMatrix::<f64>::zeros(n, n);
    for k in 1..=n {
        let mut prev = mk.clone();
        for i in 0..n {
            prev[(i, i)] += coeffs[n - k + 1];
        }
        mk = m * prev;
        coeffs[n - k] = -mk.trace() / k as f64;
    }
    coeffs
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of a monic real polynomial (coefficients from the
/// constant term up) by Aberth–Ehrlich iteration with a Newton polish.
pub fn polynomial_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    // Cauchy bound on root moduli
    let bound = 1.0 + coeffs[..deg].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / deg as f64 + 0.4;
            Complex64::from_polar(0.5 * bound, angle)
        })
        .collect();
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for k in 0..deg {
            let (p, dp) = horner(coeffs, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..deg)
                .filter(|&j| j != k)
                .map(|j| 1.0 / (z[k] - z[j]))
                .sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < 1e-16 {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(coeffs, *zk);
            if dp.norm() == 0.0 {
                break;
            }
            let next = *zk - p / dp;
            if !next.is_finite() || horner(coeffs, next).0.norm() > p.norm() {
                break;
            }
            *zk = next;
        }
    }
    z
}

pub fn max_row_sum(m: &DMatrix<f64>) -> f64 {
    m.row_iter().map(|r| r.sum()).fold(f64::NEG_INFINITY, f64::max)
}

pub fn max_col_sum(m: &DMatrix<f64>) -> f64 {
    m.column_iter().map(|c| c.sum()).fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(n: usize, v: &[f64]) -> DMatrix<f64> {
        DMatrix::from_row_slice(n, n, v)
    }

    #[test]
    fn small_examples() {
        assert_eq!(spectral_radius(&mat(2, &[0.3, 0.0, 0.0, 0.7])).unwrap(), 0.7);
        let m = mat(2, &[0.5, 0.1, 0.2, 0.4]);
        assert!((spectral_radius(&m).unwrap() - 0.6).abs() < 1e-15);
        assert_eq!(spectral_radius(&DMatrix::zeros(3, 3)).unwrap(), 0.0);
        // rotation: eigenvalues ±i
        assert!((spectral_radius(&mat(2, &[0.0, -1.0, 1.0, 0.0])).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn power_iteration_on_2x2() {
        let m = mat(2, &[0.5, 0.1, 0.2, 0.4]);
        let rho = perron_root(&m, POWER_MAX_ITER, POWER_TOL).unwrap();
        assert!((rho - 0.6).abs() < 1e-10);
    }

    #[test]
    fn charpoly_of_3x3() {
        // diag(1,2,3): (λ-1)(λ-2)(λ-3) = λ³ - 6λ² + 11λ - 6
        let c = characteristic_polynomial(&mat(3, &[1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 3.0]));
        let expect = [-6.0, 11.0, -6.0, 1.0];
        for (a, b) in c.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
        let r = polynomial_roots(&c);
        let mut re: Vec<f64> = r.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        for (a, b) in re.iter().zip([1.0, 2.0, 3.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn repeated_eigenvalue_keeps_full_precision() {
        let m = mat(3, &[0.5, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.5]);
        assert!((spectral_radius(&m).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn perron_consistency_3x3() {
        let m = mat(3, &[0.4, 0.1, 0.2, 0.15, 0.3, 0.05, 0.1, 0.2, 0.35]);
        let power = perron_root(&m, POWER_MAX_ITER, POWER_TOL).unwrap();
        let roots = polynomial_roots(&characteristic_polynomial(&m));
        let poly = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!((power - poly).abs() < 1e-8);
        assert!((spectral_radius(&m).unwrap() - poly).abs() < 1e-10);
    }

    #[test]
    fn complex_pair_in_4x4() {
        // block diagonal: rotation scaled by 2 (|λ| = 2) and diag(0.5, -1.5)
        let m = mat(4, &[
            0.0, -2.0, 0.0, 0.0,
            2.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 0.5, 0.0,
            0.0, 0.0, 0.0, -1.5,
        ]);
        assert!((spectral_radius(&m).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn larger_matrices_agree_with_schur() {
        let m = DMatrix::from_fn(6, 6, |i, j| 0.1 + ((i * 7 + j * 3) % 5) as f64 * 0.05);
        let power = spectral_radius(&m).unwrap();
        let schur = m.clone().complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!((power - schur).abs() < 1e-10);
        // a matrix with negative entries takes the Schur route
        let mut s = m.clone();
        s[(0, 1)] = -3.0;
        let expect = s.clone().complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert_eq!(spectral_radius(&s).unwrap(), expect);
    }

    #[test]
    fn reducible_matrix_reports_bracket() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![0.3, 0.7, 0.2, 0.1, 0.5, 0.4]));
        let err = perron_root(&m, 50, 1e-12).unwrap_err();
        assert!(err.lower <= 0.7 && err.upper >= 0.7 - 1e-12);
        // the dispatcher still resolves it
        assert!((spectral_radius(&m).unwrap() - 0.7).abs() < 1e-12);
    }
}
