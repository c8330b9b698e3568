//! Eigenvalues of general (non-symmetric) real matrices: Householder
//! reduction to upper Hessenberg form followed by Francis double-shift QR
//! iteration with 2×2 deflation for complex-conjugate pairs.
//!
//! Only eigenvalues are computed; erasure error operators need spectra and
//! spectral radii, never Schur vectors.

use super::matrix::{dot, norm2, Matrix};
use super::LinalgError;

/// Full spectrum of a real square matrix.
///
/// Values are stored as `(re, im)` pairs sorted by real part then imaginary
/// part; non-real values occur in conjugate pairs because the input is real.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSpectrum {
    values: Vec<(f64, f64)>,
    radius: f64,
}

impl ComplexSpectrum {
    fn new(mut values: Vec<(f64, f64)>) -> Self {
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let radius = values
            .iter()
            .map(|&(re, im)| re.hypot(im))
            .fold(0.0_f64, f64::max);
        ComplexSpectrum { values, radius }
    }

    pub fn values(&self) -> &[(f64, f64)] {
        &self.values
    }

    /// Max modulus over the stored multiset.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Householder reduction to upper Hessenberg form, in place, without
/// accumulating the similarity transform.
fn hessenberg_in_place(h: &mut Matrix) {
    let n = h.rows();
    for k in 0..n.saturating_sub(2) {
        let mut v: Vec<f64> = ((k + 1)..n).map(|i| h[(i, k)]).collect();
        let alpha = norm2(&v);
        if alpha == 0.0 {
            continue;
        }
        let sign = if v[0] >= 0.0 { 1.0 } else { -1.0 };
        v[0] += sign * alpha;
        let beta = 2.0 / dot(&v, &v);

        // left: H ← (I − β v vᵀ) H on rows k+1..n
        for j in k..n {
            let mut s = 0.0;
            for i in (k + 1)..n {
                s += v[i - k - 1] * h[(i, j)];
            }
            s *= beta;
            for i in (k + 1)..n {
                h[(i, j)] -= s * v[i - k - 1];
            }
        }
        // right: H ← H (I − β v vᵀ) on columns k+1..n
        for i in 0..n {
            let mut s = 0.0;
            for j in (k + 1)..n {
                s += h[(i, j)] * v[j - k - 1];
            }
            s *= beta;
            for j in (k + 1)..n {
                h[(i, j)] -= s * v[j - k - 1];
            }
        }
        // structural zeros below the subdiagonal of column k
        for i in (k + 2)..n {
            h[(i, k)] = 0.0;
        }
    }
}

fn sum_abs(h: &Matrix) -> f64 {
    h.data().iter().map(|v| v.abs()).sum()
}

fn householder3(x: f64, y: f64, z: f64) -> (f64, f64, f64, f64) {
    let norm = (x * x + y * y + z * z).sqrt();
    if norm == 0.0 {
        return (1.0, 0.0, 0.0, 0.0);
    }
    let sign = if x >= 0.0 { 1.0 } else { -1.0 };
    let u0 = x + sign * norm;
    if u0 == 0.0 {
        return (1.0, 0.0, 0.0, 0.0);
    }
    let v1 = y / u0;
    let v2 = z / u0;
    let tau = 2.0 / (1.0 + v1 * v1 + v2 * v2);
    (1.0, v1, v2, tau)
}

fn householder2(x: f64, y: f64) -> (f64, f64, f64) {
    let norm = (x * x + y * y).sqrt();
    if norm == 0.0 {
        return (1.0, 0.0, 0.0);
    }
    let sign = if x >= 0.0 { 1.0 } else { -1.0 };
    let u0 = x + sign * norm;
    if u0 == 0.0 {
        return (1.0, 0.0, 0.0);
    }
    let v1 = y / u0;
    let tau = 2.0 / (1.0 + v1 * v1);
    (1.0, v1, tau)
}

/// Francis double-shift QR on an upper Hessenberg matrix, reducing it in
/// place to real Schur (quasi-upper-triangular) form. Real eigenvalues end
/// up as 1×1 diagonal blocks, conjugate pairs as 2×2 blocks.
fn francis_qr_in_place(h: &mut Matrix, max_iter: usize) -> Result<(), LinalgError> {
    let n = h.rows();
    if n <= 2 {
        return Ok(());
    }
    let eps = f64::EPSILON;
    // Negligibility needs a floor: when the local diagonal converges to a
    // zero eigenvalue the pairwise sum vanishes and a purely relative test
    // never deflates, and each double step re-injects rotation noise of
    // order eps times the matrix norm. Measuring against the absolute-sum
    // norm of the initial Hessenberg matrix absorbs both.
    let anorm = sum_abs(h).max(f64::MIN_POSITIVE);
    let negligible =
        |sub: f64, a: f64, b: f64| sub.abs() <= eps * (a.abs() + b.abs()).max(anorm);
    let mut p = n;
    let mut iter = 0usize;

    while p > 2 {
        // deflate negligible subdiagonals at the bottom of the active block
        if negligible(h[(p - 1, p - 2)], h[(p - 2, p - 2)], h[(p - 1, p - 1)]) {
            h[(p - 1, p - 2)] = 0.0;
            p -= 1;
            continue;
        }
        if negligible(h[(p - 2, p - 3)], h[(p - 3, p - 3)], h[(p - 2, p - 2)]) {
            h[(p - 2, p - 3)] = 0.0;
            p -= 2;
            continue;
        }

        iter += 1;
        if std::env::var("FRAMELAB_QR_TRACE").is_ok() {
            eprintln!(
                "iter {iter}: p={p} sub={:+.3e} subsub={:+.3e}",
                h[(p - 1, p - 2)],
                h[(p - 2, p - 3)]
            );
        }
        if iter > max_iter {
            return Err(LinalgError::NonConvergence {
                what: "qr iteration",
                iterations: max_iter,
            });
        }

        // start of the unreduced block ending at row p-1
        let mut lo = p - 1;
        while lo > 0 {
            if negligible(h[(lo, lo - 1)], h[(lo - 1, lo - 1)], h[(lo, lo)]) {
                h[(lo, lo - 1)] = 0.0;
                break;
            }
            lo -= 1;
        }

        // double shift: trace and determinant of the trailing 2×2 block,
        // with an exceptional shift every 10 stalled iterations
        let (s, t) = if iter % 10 == 0 {
            let w = h[(p - 1, p - 2)].abs() + h[(p - 2, p - 3)].abs();
            (2.0 * w, w * w)
        } else {
            let a11 = h[(p - 2, p - 2)];
            let a12 = h[(p - 2, p - 1)];
            let a21 = h[(p - 1, p - 2)];
            let a22 = h[(p - 1, p - 1)];
            (a11 + a22, a11 * a22 - a12 * a21)
        };

        // first column of (H² − sH + tI) on the active block
        let h00 = h[(lo, lo)];
        let h01 = h[(lo, lo + 1)];
        let h10 = h[(lo + 1, lo)];
        let h11 = h[(lo + 1, lo + 1)];
        let mut x = h00 * h00 + h01 * h10 - s * h00 + t;
        let mut y = h10 * (h00 + h11 - s);
        let mut z = if lo + 2 < p {
            h10 * h[(lo + 2, lo + 1)]
        } else {
            0.0
        };

        // chase the bulge down the active block
        for k in lo..(p - 1) {
            let use3 = k + 2 < p;
            let (v0, v1, v2, tau) = if use3 {
                householder3(x, y, z)
            } else {
                let (a, b, t2) = householder2(x, y);
                (a, b, 0.0, t2)
            };

            let col_start = if k > lo { k - 1 } else { k };
            // left
            for j in col_start..n {
                let mut d = v0 * h[(k, j)] + v1 * h[(k + 1, j)];
                if use3 {
                    d += v2 * h[(k + 2, j)];
                }
                d *= tau;
                h[(k, j)] -= d * v0;
                h[(k + 1, j)] -= d * v1;
                if use3 {
                    h[(k + 2, j)] -= d * v2;
                }
            }
            // right
            let row_end = if use3 { (k + 4).min(p) } else { p };
            for i in 0..row_end {
                let mut d = v0 * h[(i, k)] + v1 * h[(i, k + 1)];
                if use3 {
                    d += v2 * h[(i, k + 2)];
                }
                d *= tau;
                h[(i, k)] -= d * v0;
                h[(i, k + 1)] -= d * v1;
                if use3 {
                    h[(i, k + 2)] -= d * v2;
                }
            }

            // pick up the next bulge from column k
            if k + 2 < p - 1 {
                x = h[(k + 1, k)];
                y = h[(k + 2, k)];
                z = h[(k + 3, k)];
            } else if k + 1 < p - 1 {
                x = h[(k + 1, k)];
                y = h[(k + 2, k)];
                z = 0.0;
            }
        }

        // the chase leaves only roundoff below the subdiagonal
        for i in (lo + 2)..p {
            for j in lo..(i - 1) {
                h[(i, j)] = 0.0;
            }
        }
    }

    if p == 2 {
        if negligible(h[(1, 0)], h[(0, 0)], h[(1, 1)]) {
            h[(1, 0)] = 0.0;
        }
    }
    Ok(())
}

/// Read eigenvalues off a quasi-upper-triangular matrix.
fn extract_eigenvalues(h: &Matrix) -> Vec<(f64, f64)> {
    let n = h.rows();
    let eps = f64::EPSILON;
    let scale = h.max_abs().max(f64::MIN_POSITIVE);
    let mut out = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        let coupled = i + 1 < n
            && h[(i + 1, i)].abs()
                > eps * (h[(i, i)].abs() + h[(i + 1, i + 1)].abs()).max(scale);
        if coupled {
            let a = h[(i, i)];
            let b = h[(i, i + 1)];
            let c = h[(i + 1, i)];
            let d = h[(i + 1, i + 1)];
            let mean = 0.5 * (a + d);
            let disc = 0.25 * (a - d) * (a - d) + b * c;
            if disc >= 0.0 {
                let sq = disc.sqrt();
                out.push((mean + sq, 0.0));
                out.push((mean - sq, 0.0));
            } else {
                let sq = (-disc).sqrt();
                out.push((mean, sq));
                out.push((mean, -sq));
            }
            i += 2;
        } else {
            out.push((h[(i, i)], 0.0));
            i += 1;
        }
    }
    out
}

/// All eigenvalues of a real square matrix, with algebraic multiplicity.
pub fn general_eigenvalues(a: &Matrix) -> Result<ComplexSpectrum, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Err(LinalgError::EmptyMatrix);
    }
    let mut h = a.clone();
    hessenberg_in_place(&mut h);
    francis_qr_in_place(&mut h, 30 * n)?;
    Ok(ComplexSpectrum::new(extract_eigenvalues(&h)))
}

/// Spectral radius: max modulus over the full spectrum.
pub fn spectral_radius(a: &Matrix) -> Result<f64, LinalgError> {
    Ok(general_eigenvalues(a)?.radius())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::symmetric::sym_eig;

    fn assert_spectrum(a: &Matrix, expected: &[(f64, f64)], tol: f64) {
        let got = general_eigenvalues(a).unwrap();
        let mut want = expected.to_vec();
        want.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert_eq!(got.len(), want.len());
        for (g, w) in got.values().iter().zip(&want) {
            assert!(
                (g.0 - w.0).abs() < tol && (g.1 - w.1).abs() < tol,
                "got {g:?}, want {w:?}"
            );
        }
    }

    #[test]
    fn triangular_spectrum_is_diagonal() {
        let a = Matrix::from_rows(&[
            vec![3.0, 1.0, -2.0],
            vec![0.0, -1.0, 4.0],
            vec![0.0, 0.0, 0.5],
        ]);
        assert_spectrum(&a, &[(3.0, 0.0), (-1.0, 0.0), (0.5, 0.0)], 1e-10);
    }

    #[test]
    fn rotation_matrix_has_unit_imaginary_pair() {
        let a = Matrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]);
        assert_spectrum(&a, &[(0.0, 1.0), (0.0, -1.0)], 1e-12);
        assert!((spectral_radius(&a).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nilpotent_radius_zero() {
        let a = Matrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]);
        assert!(spectral_radius(&a).unwrap() < 1e-14);
    }

    #[test]
    fn negative_entry_dominates_radius() {
        let a = Matrix::diagonal(&[-3.0, 2.0]);
        assert!((spectral_radius(&a).unwrap() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn identity_radius_one() {
        assert!((spectral_radius(&Matrix::identity(3)).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn companion_matrix_roots() {
        // x³ − 6x² + 11x − 6 = (x−1)(x−2)(x−3)
        let a = Matrix::from_rows(&[
            vec![6.0, -11.0, 6.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
        ]);
        assert_spectrum(&a, &[(1.0, 0.0), (2.0, 0.0), (3.0, 0.0)], 1e-9);
    }

    #[test]
    fn agrees_with_symmetric_solver() {
        let a = Matrix::from_rows(&[
            vec![4.0, 1.0, -2.0, 2.0],
            vec![1.0, 2.0, 0.0, 1.0],
            vec![-2.0, 0.0, 3.0, -2.0],
            vec![2.0, 1.0, -2.0, 1.0],
        ]);
        let sym: Vec<(f64, f64)> = sym_eig(&a)
            .unwrap()
            .eigenvalues()
            .iter()
            .map(|&v| (v, 0.0))
            .collect();
        assert_spectrum(&a, &sym, 1e-7);
    }

    #[test]
    fn conjugate_pairs_come_matched() {
        let a = Matrix::from_rows(&[
            vec![1.0, -4.0, 0.0, 0.0],
            vec![2.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 2.0, 3.0],
            vec![0.0, 0.0, -3.0, 2.0],
        ]);
        let spec = general_eigenvalues(&a).unwrap();
        let mut values = spec.values().to_vec();
        while let Some((re, im)) = values.pop() {
            if im == 0.0 {
                continue;
            }
            let mate = values
                .iter()
                .position(|&(r, i)| (r - re).abs() < 1e-10 && (i + im).abs() < 1e-10);
            assert!(mate.is_some(), "no conjugate for ({re}, {im})");
            values.remove(mate.unwrap());
        }
    }

    #[test]
    fn zero_and_one_by_one() {
        assert!(spectral_radius(&Matrix::zeros(5, 5)).unwrap() < 1e-15);
        let spec = general_eigenvalues(&Matrix::from_rows(&[vec![42.0]])).unwrap();
        assert_eq!(spec.values(), &[(42.0, 0.0)]);
    }
}
