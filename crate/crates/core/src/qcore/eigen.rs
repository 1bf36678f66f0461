use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::matrix::CMatrix;

/// Hermiticity tolerance required of eigensolver inputs.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Largest dimension the public eigensolver accepts.
pub const EIGEN_MAX_DIM: usize = 16;

/// Convergence threshold on the off-diagonal Frobenius norm.
const OFF_DIAG_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Descending eigenvalues of a Hermitian matrix (cyclic Jacobi rotations).
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    check_input(m)?;
    jacobi_eigenvalues(m)
}

/// Eigenvalues (descending) and matching eigenvector columns of a Hermitian
/// matrix, so that `m = V · diag(λ) · V†`.
pub fn hermitian_eigen(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    check_input(m)?;
    jacobi(m)
}

fn check_input(m: &CMatrix) -> Result<()> {
    if m.dim() > EIGEN_MAX_DIM {
        return Err(Error::EigenTooLarge {
            dim: m.dim(),
            max: EIGEN_MAX_DIM,
        });
    }
    if !m.is_finite() {
        return Err(Error::NonFinite("matrix entries"));
    }
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian {
            deviation,
            tol: HERMITIAN_TOL,
        });
    }
    Ok(())
}

pub(crate) fn jacobi_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    Ok(jacobi(m)?.0)
}

/// Cyclic Jacobi for Hermitian matrices. Each rotation cancels one
/// off-diagonal entry: the entry's phase is absorbed into a relative phase
/// between the two columns, then a real plane rotation annihilates it.
pub(crate) fn jacobi(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = m.dim();
    let mut a = m.clone();
    // Work on an exactly Hermitian copy so roundoff asymmetry cannot grow.
    for i in 0..n {
        a.set(i, i, Complex64::new(a.get(i, i).re, 0.0));
        for j in (i + 1)..n {
            let avg = (a.get(i, j) + a.get(j, i).conj()) * 0.5;
            a.set(i, j, avg);
            a.set(j, i, avg.conj());
        }
    }
    let mut v = CMatrix::identity(n);

    for _ in 0..=MAX_SWEEPS {
        if off_diagonal_norm(&a) < OFF_DIAG_TOL {
            let mut pairs: Vec<(f64, usize)> =
                (0..n).map(|i| (a.get(i, i).re, i)).collect();
            pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
            let values = pairs.iter().map(|&(l, _)| l).collect();
            let mut vectors = CMatrix::zeros(n);
            for (col, &(_, src)) in pairs.iter().enumerate() {
                for row in 0..n {
                    vectors.set(row, col, v.get(row, src));
                }
            }
            return Ok((values, vectors));
        }

        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r;
                let w = phase.conj();
                let theta = (a.get(q, q).re - a.get(p, p).re) / (2.0 * r);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // A ← U†AU with U = I except
                //   U[p][p] = c, U[p][q] = s, U[q][p] = −s·w, U[q][q] = c·w.
                for i in 0..n {
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    a.set(i, p, aip * c - aiq * (s * w));
                    a.set(i, q, aip * s + aiq * (c * w));
                }
                for j in 0..n {
                    let apj = a.get(p, j);
                    let aqj = a.get(q, j);
                    a.set(p, j, apj * c - aqj * (s * w.conj()));
                    a.set(q, j, apj * s + aqj * (c * w.conj()));
                }
                a.set(p, p, Complex64::new(a.get(p, p).re, 0.0));
                a.set(q, q, Complex64::new(a.get(q, q).re, 0.0));
                a.set(p, q, Complex64::ZERO);
                a.set(q, p, Complex64::ZERO);

                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip * c - viq * (s * w));
                    v.set(i, q, vip * s + viq * (c * w));
                }
            }
        }
    }
    Err(Error::NoConvergence(MAX_SWEEPS))
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a.get(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Square root of a positive-semidefinite Hermitian matrix via its
/// eigendecomposition; eigenvalues inside roundoff of zero are clamped.
pub(crate) fn sqrt_psd(m: &CMatrix) -> Result<CMatrix> {
    let (values, vectors) = jacobi(m)?;
    if let Some(&min) = values.last() {
        if min < -1e-8 {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
    }
    let n = m.dim();
    let mut out = CMatrix::zeros(n);
    for (k, &l) in values.iter().enumerate() {
        let root = l.max(0.0).sqrt();
        if root == 0.0 {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                let v = out.get(i, j) + vectors.get(i, k) * vectors.get(j, k).conj() * root;
                out.set(i, j, v);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn ci(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn maximally_mixed_qubit_has_two_half_eigenvalues() {
        let mut m = CMatrix::zeros(2);
        m.set(0, 0, c(0.5));
        m.set(1, 1, c(0.5));
        let values = hermitian_eigenvalues(&m).unwrap();
        assert!((values[0] - 0.5).abs() < 1e-14);
        assert!((values[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn diagonal_matrix_returns_sorted_diagonal() {
        let mut m = CMatrix::zeros(2);
        m.set(0, 0, c(0.25));
        m.set(1, 1, c(0.75));
        let values = hermitian_eigenvalues(&m).unwrap();
        assert_eq!(values, vec![0.75, 0.25]);
    }

    #[test]
    fn complex_two_by_two_with_known_spectrum() {
        // [[2, i], [−i, 2]] has eigenvalues 3 and 1.
        let m = CMatrix::from_rows(&[
            vec![c(2.0), ci(0.0, 1.0)],
            vec![ci(0.0, -1.0), c(2.0)],
        ])
        .unwrap();
        let (values, vectors) = hermitian_eigen(&m).unwrap();
        assert!((values[0] - 3.0).abs() < 1e-12);
        assert!((values[1] - 1.0).abs() < 1e-12);

        // Residual ‖Av − λv‖ per eigenpair.
        for (k, &value) in values.iter().enumerate() {
            for i in 0..2 {
                let av: Complex64 = (0..2).map(|j| m.get(i, j) * vectors.get(j, k)).sum();
                assert!((av - vectors.get(i, k) * value).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn rank_two_mixture_from_w1_reduction() {
        // ½|00⟩⟨00| + ½|Ψ⁺⟩⟨Ψ⁺| has spectrum {½, ½, 0, 0}.
        let mut m = CMatrix::zeros(4);
        m.set(0, 0, c(0.5));
        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            m.set(i, j, c(0.25));
        }
        let values = hermitian_eigenvalues(&m).unwrap();
        assert!((values[0] - 0.5).abs() < 1e-13);
        assert!((values[1] - 0.5).abs() < 1e-13);
        assert!(values[2].abs() < 1e-13);
        assert!(values[3].abs() < 1e-13);
    }

    #[test]
    fn eigensum_matches_trace_and_product_matches_det_for_2x2() {
        let m = CMatrix::from_rows(&[
            vec![ci(1.2, 0.0), ci(0.3, 0.7)],
            vec![ci(0.3, -0.7), ci(-0.4, 0.0)],
        ])
        .unwrap();
        let values = hermitian_eigenvalues(&m).unwrap();
        let trace = m.trace().re;
        assert!((values.iter().sum::<f64>() - trace).abs() < 1e-12);
        let det = (m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0)).re;
        assert!((values[0] * values[1] - det).abs() < 1e-12);
    }

    #[test]
    fn eigenvectors_reassemble_the_matrix() {
        let m = CMatrix::from_rows(&[
            vec![c(0.5), ci(0.1, 0.2), ci(0.0, -0.3)],
            vec![ci(0.1, -0.2), c(0.3), ci(0.05, 0.0)],
            vec![ci(0.0, 0.3), ci(0.05, 0.0), c(0.2)],
        ])
        .unwrap();
        let (values, vectors) = hermitian_eigen(&m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Complex64::ZERO;
                for (k, &value) in values.iter().enumerate() {
                    acc += vectors.get(i, k) * vectors.get(j, k).conj() * value;
                }
                assert!((acc - m.get(i, j)).norm() < 1e-12, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn sqrt_psd_squares_back() {
        let m = CMatrix::from_rows(&[
            vec![c(1.0), ci(0.2, 0.1)],
            vec![ci(0.2, -0.1), c(0.5)],
        ])
        .unwrap();
        let s = sqrt_psd(&m).unwrap();
        let sq = s.mul(&s).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((sq.get(i, j) - m.get(i, j)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_non_hermitian_and_oversized_inputs() {
        let mut m = CMatrix::identity(2);
        m.set(0, 1, c(0.5));
        assert!(matches!(
            hermitian_eigenvalues(&m).unwrap_err(),
            Error::NotHermitian { .. }
        ));
        assert!(matches!(
            hermitian_eigenvalues(&CMatrix::identity(32)).unwrap_err(),
            Error::EigenTooLarge { .. }
        ));
    }
}
