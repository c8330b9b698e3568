//! Symmetric eigendecomposition via cyclic Jacobi rotations.
//!
//! Jacobi is slower than tridiagonalization + QL for large matrices, but at
//! desk scale it is simple and delivers eigenvectors orthonormal to machine
//! precision, which the frame constructions downstream depend on.

use super::matrix::Matrix;
use super::LinalgError;

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a real symmetric matrix.
///
/// Eigenvalues are sorted descending with zero-classified values snapped to
/// exactly `0.0` and moved to the trailing positions. Column `j` of
/// `eigenvectors` is the unit eigenvector of `eigenvalues[j]`, with each
/// column's largest-magnitude entry made positive (ties broken by lowest
/// index) so repeated runs are bit-identical.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: Matrix,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &Matrix {
        &self.eigenvectors
    }

    /// Number of eigenvalues classified as nonzero.
    pub fn nonzero_count(&self) -> usize {
        self.eigenvalues.iter().filter(|&&v| v != 0.0).count()
    }

    /// Reassemble `M diag(λ) Mᵀ`.
    pub fn reconstruct(&self) -> Matrix {
        let n = self.eigenvalues.len();
        let mut out = Matrix::zeros(n, n);
        for j in 0..n {
            let col = self.eigenvectors.col(j);
            out.add_outer(self.eigenvalues[j], &col, &col);
        }
        out
    }
}

/// Cyclic Jacobi eigensolver for real symmetric matrices.
///
/// The input must be symmetric within `1e-12`; it is symmetrized by
/// averaging before the sweeps start. Fails with
/// [`LinalgError::NotSymmetric`] otherwise, or with
/// [`LinalgError::NonConvergence`] after 100 sweeps (which signals a
/// pathological input at this scale).
pub fn sym_eig(a: &Matrix) -> Result<SpectralDecomposition, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(SpectralDecomposition {
            eigenvalues: vec![],
            eigenvectors: Matrix::zeros(0, 0),
        });
    }
    let deviation = a.asymmetry();
    if deviation > 1e-12 {
        return Err(LinalgError::NotSymmetric { deviation });
    }

    // Symmetrize by averaging, then rotate until the off-diagonal mass dies.
    let mut work = Matrix::from_fn(n, n, |i, j| 0.5 * (a[(i, j)] + a[(j, i)]));
    let mut vectors = Matrix::identity(n);
    let off_tol = 1e-14 * work.max_abs().max(1.0);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += work[(p, q)].abs();
            }
        }
        if off <= off_tol {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = work[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = work[(p, p)];
                let aqq = work[(q, q)];
                // rotation angle via the stable tangent formula
                let theta = 0.5 * (aqq - app) / apq;
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let h = t * apq;

                work[(p, p)] = app - h;
                work[(q, q)] = aqq + h;
                work[(p, q)] = 0.0;
                work[(q, p)] = 0.0;
                for j in 0..n {
                    if j == p || j == q {
                        continue;
                    }
                    let ajp = work[(j, p)];
                    let ajq = work[(j, q)];
                    work[(j, p)] = ajp - s * (ajq + tau * ajp);
                    work[(p, j)] = work[(j, p)];
                    work[(j, q)] = ajq + s * (ajp - tau * ajq);
                    work[(q, j)] = work[(j, q)];
                }
                for j in 0..n {
                    let vjp = vectors[(j, p)];
                    let vjq = vectors[(j, q)];
                    vectors[(j, p)] = vjp - s * (vjq + tau * vjp);
                    vectors[(j, q)] = vjq + s * (vjp - tau * vjq);
                }
            }
        }
    }
    if !converged {
        // final check: the last sweep may have finished the job
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += work[(p, q)].abs();
            }
        }
        if off > off_tol {
            return Err(LinalgError::NonConvergence {
                what: "jacobi sweeps",
                iterations: MAX_SWEEPS,
            });
        }
    }

    let mut raw: Vec<f64> = (0..n).map(|i| work[(i, i)]).collect();

    // Snap near-zero eigenvalues to exactly zero, relative to the largest.
    let lambda_max = raw.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let tol_zero = 1e-8 * lambda_max.max(1.0);
    for v in &mut raw {
        if v.abs() < tol_zero {
            *v = 0.0;
        }
    }

    // Order: nonzero eigenvalues descending, zeros trailing; stable in the
    // original column index so degenerate clusters stay deterministic.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        let zi = raw[i] == 0.0;
        let zj = raw[j] == 0.0;
        zi.cmp(&zj)
            .then(raw[j].partial_cmp(&raw[i]).unwrap())
            .then(i.cmp(&j))
    });

    let eigenvalues: Vec<f64> = order.iter().map(|&i| raw[i]).collect();
    let mut eigenvectors = Matrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = vectors.col(src);
        // deterministic sign: largest-magnitude entry positive
        let mut lead = 0;
        for (i, v) in col.iter().enumerate() {
            if v.abs() > col[lead].abs() {
                lead = i;
            }
        }
        if col[lead] < 0.0 {
            for v in &mut col {
                *v = -*v;
            }
        }
        eigenvectors.set_col(dst, &col);
    }

    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_invariants(a: &Matrix, dec: &SpectralDecomposition) {
        let n = a.rows();
        let m = dec.eigenvectors();
        let mtm = m.transpose().matmul(m);
        assert!(
            mtm.max_abs_diff(&Matrix::identity(n)) < 1e-10,
            "eigenvectors not orthonormal"
        );
        let tol = 1e-9 * a.max_abs().max(1.0);
        for j in 0..n {
            let col = m.col(j);
            let av = a.matvec(&col);
            for i in 0..n {
                let resid = (av[i] - dec.eigenvalues()[j] * col[i]).abs();
                assert!(resid < tol, "residual {resid} at ({i},{j})");
            }
        }
        // zeros trail
        let mut seen_zero = false;
        for &v in dec.eigenvalues() {
            if v == 0.0 {
                seen_zero = true;
            } else {
                assert!(!seen_zero, "nonzero eigenvalue after a zero");
            }
        }
    }

    #[test]
    fn two_by_two_by_hand() {
        // [[1,-1],[-1,1]] has eigenvalues 2 and 0, kernel spanned by (1,1)/√2
        let a = Matrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]);
        let dec = sym_eig(&a).unwrap();
        assert!((dec.eigenvalues()[0] - 2.0).abs() < 1e-12);
        assert_eq!(dec.eigenvalues()[1], 0.0);
        let kernel = dec.eigenvectors().col(1);
        let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
        assert!((kernel[0] - inv_sqrt2).abs() < 1e-12);
        assert!((kernel[1] - inv_sqrt2).abs() < 1e-12);
        check_invariants(&a, &dec);
    }

    #[test]
    fn zero_matrix() {
        let a = Matrix::zeros(4, 4);
        let dec = sym_eig(&a).unwrap();
        assert!(dec.eigenvalues().iter().all(|&v| v == 0.0));
        assert!(dec
            .eigenvectors()
            .max_abs_diff(&Matrix::identity(4)) < 1e-15);
    }

    #[test]
    fn complete_graph_laplacian_spectrum() {
        // L(K_n) = n·I - J has eigenvalues n (multiplicity n-1) and 0
        for n in [3usize, 4, 6] {
            let a = Matrix::from_fn(n, n, |i, j| if i == j { n as f64 - 1.0 } else { -1.0 });
            let dec = sym_eig(&a).unwrap();
            for j in 0..n - 1 {
                assert!(
                    (dec.eigenvalues()[j] - n as f64).abs() < 1e-10,
                    "K_{n} eigenvalue {j}"
                );
            }
            assert_eq!(dec.eigenvalues()[n - 1], 0.0);
            check_invariants(&a, &dec);
        }
    }

    #[test]
    fn rejects_asymmetric_input() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]);
        assert!(matches!(sym_eig(&a), Err(LinalgError::NotSymmetric { .. })));
    }

    #[test]
    fn deterministic_repeat() {
        let a = Matrix::from_rows(&[
            vec![2.0, -1.0, 0.0, -1.0],
            vec![-1.0, 2.0, -1.0, 0.0],
            vec![0.0, -1.0, 2.0, -1.0],
            vec![-1.0, 0.0, -1.0, 2.0],
        ]);
        let d1 = sym_eig(&a).unwrap();
        let d2 = sym_eig(&a).unwrap();
        assert_eq!(d1.eigenvalues(), d2.eigenvalues());
        assert_eq!(d1.eigenvectors(), d2.eigenvectors());
    }
}
