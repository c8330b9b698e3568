//! Dense row-major matrices and the small vector helpers the rest of the
//! crate is built on. Everything here is `f64`; desk scale (n ≤ ~20) means
//! no attempt at blocking or sparsity.

use std::fmt;
use std::ops::{Index, IndexMut};

/// Dense real matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Build from nested rows; panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[f64]) {
        assert_eq!(v.len(), self.rows);
        for (i, &x) in v.iter().enumerate() {
            self[(i, j)] = x;
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matvec");
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Rank-1 update `self += alpha * u vᵀ`.
    pub fn add_outer(&mut self, alpha: f64, u: &[f64], v: &[f64]) {
        assert_eq!(u.len(), self.rows);
        assert_eq!(v.len(), self.cols);
        for i in 0..self.rows {
            let s = alpha * u[i];
            if s == 0.0 {
                continue;
            }
            for j in 0..self.cols {
                self[(i, j)] += s * v[j];
            }
        }
    }

    /// Largest absolute entry; the crate's working ∞-measure for residuals.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, &v| m.max(v.abs()))
    }

    /// Largest absolute deviation from `other`, entrywise.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Largest |self[i][j] - selfᵀ[i][j]|.
    pub fn asymmetry(&self) -> f64 {
        assert!(self.is_square());
        let mut worst = 0.0_f64;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    /// Columns selected by `idx`, in order.
    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])])
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v:>12.6}")).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0_f64, |m, &v| m.max(v.abs()))
}

pub fn sub_vec(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_vec(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale_vec(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// Numerical rank by Gaussian elimination with partial pivoting.
///
/// A pivot counts only when `|pivot| > tol * max(1, max_abs(a))`.
pub fn rank(a: &Matrix, tol: f64) -> usize {
    assert!(tol > 0.0, "rank tolerance must be positive");
    let mut work = a.clone();
    let (m, n) = (work.rows(), work.cols());
    let threshold = tol * work.max_abs().max(1.0);
    let mut rank = 0;
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row >= m {
            break;
        }
        // partial pivot: largest magnitude in this column at or below pivot_row
        let mut best = pivot_row;
        for i in (pivot_row + 1)..m {
            if work[(i, col)].abs() > work[(best, col)].abs() {
                best = i;
            }
        }
        if work[(best, col)].abs() <= threshold {
            continue;
        }
        if best != pivot_row {
            for j in 0..n {
                let tmp = work[(pivot_row, j)];
                work[(pivot_row, j)] = work[(best, j)];
                work[(best, j)] = tmp;
            }
        }
        for i in (pivot_row + 1)..m {
            let factor = work[(i, col)] / work[(pivot_row, col)];
            if factor == 0.0 {
                continue;
            }
            for j in col..n {
                let update = factor * work[(pivot_row, j)];
                work[(i, j)] -= update;
            }
        }
        rank += 1;
        pivot_row += 1;
    }
    rank
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
///
/// Returns `None` when a pivot falls below `1e-13 * max(1, max_abs(a))`,
/// i.e. the matrix is numerically singular.
pub fn invert(a: &Matrix) -> Option<Matrix> {
    assert!(a.is_square());
    let n = a.rows();
    let mut work = a.clone();
    let mut inv = Matrix::identity(n);
    let threshold = 1e-13 * work.max_abs().max(1.0);
    for col in 0..n {
        let mut best = col;
        for i in (col + 1)..n {
            if work[(i, col)].abs() > work[(best, col)].abs() {
                best = i;
            }
        }
        if work[(best, col)].abs() <= threshold {
            return None;
        }
        if best != col {
            for j in 0..n {
                let tmp = work[(col, j)];
                work[(col, j)] = work[(best, j)];
                work[(best, j)] = tmp;
                let tmp = inv[(col, j)];
                inv[(col, j)] = inv[(best, j)];
                inv[(best, j)] = tmp;
            }
        }
        let pivot = work[(col, col)];
        for j in 0..n {
            work[(col, j)] /= pivot;
            inv[(col, j)] /= pivot;
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let factor = work[(i, col)];
            if factor == 0.0 {
                continue;
            }
            for j in 0..n {
                let wu = factor * work[(col, j)];
                work[(i, j)] -= wu;
                let iu = factor * inv[(col, j)];
                inv[(i, j)] -= iu;
            }
        }
    }
    Some(inv)
}

/// Row-sum operator norm ‖·‖∞ (used for condition estimates).
pub fn row_sum_norm(a: &Matrix) -> f64 {
    (0..a.rows())
        .map(|i| a.row(i).iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0_f64, f64::max)
}

/// Orthonormal factor Q of a square matrix via Householder QR, with the sign
/// of each reflector fixed so that R has a nonnegative diagonal. For a
/// standard-normal input this yields a Haar-distributed orthogonal matrix.
pub fn qr_orthonormal(a: &Matrix) -> Matrix {
    assert!(a.is_square());
    let n = a.rows();
    let mut r = a.clone();
    let mut q = Matrix::identity(n);
    for k in 0..n {
        // Householder vector for column k below the diagonal
        let mut v: Vec<f64> = (k..n).map(|i| r[(i, k)]).collect();
        let alpha = norm2(&v);
        if alpha == 0.0 {
            continue;
        }
        let sign = if v[0] >= 0.0 { 1.0 } else { -1.0 };
        v[0] += sign * alpha;
        let vnorm2 = dot(&v, &v);
        if vnorm2 == 0.0 {
            continue;
        }
        // r <- (I - 2 v vᵀ / vᵀv) r, restricted to rows k..n
        for j in 0..n {
            let mut s = 0.0;
            for i in k..n {
                s += v[i - k] * r[(i, j)];
            }
            s *= 2.0 / vnorm2;
            for i in k..n {
                r[(i, j)] -= s * v[i - k];
            }
        }
        // q <- q (I - 2 v vᵀ / vᵀv), restricted to cols k..n
        for i in 0..n {
            let mut s = 0.0;
            for j in k..n {
                s += q[(i, j)] * v[j - k];
            }
            s *= 2.0 / vnorm2;
            for j in k..n {
                q[(i, j)] -= s * v[j - k];
            }
        }
    }
    // Flip column signs so the implicit R has positive diagonal.
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matmul_and_transpose() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0]]);
        let at = a.transpose();
        let ata = at.matmul(&a);
        assert_eq!(ata.rows(), 2);
        assert_eq!(ata[(0, 0)], 35.0);
        assert_eq!(ata[(0, 1)], 44.0);
        assert_eq!(ata[(1, 1)], 56.0);
        assert!((ata.asymmetry()) < 1e-15);
    }

    #[test]
    fn rank_of_rank_deficient() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0], vec![0.0, 1.0, 1.0]]);
        assert_eq!(rank(&a, 1e-10), 2);
        assert_eq!(rank(&Matrix::zeros(3, 3), 1e-10), 0);
        assert_eq!(rank(&Matrix::identity(4), 1e-10), 4);
    }

    #[test]
    fn rank_wide_and_tall() {
        let wide = Matrix::from_rows(&[vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0]]);
        assert_eq!(rank(&wide, 1e-10), 2);
        let tall = wide.transpose();
        assert_eq!(rank(&tall, 1e-10), 2);
    }

    #[test]
    fn qr_orthonormal_is_orthogonal() {
        let a = Matrix::from_rows(&[
            vec![0.3, -1.2, 0.7],
            vec![2.0, 0.1, -0.4],
            vec![-0.9, 0.8, 1.5],
        ]);
        let q = qr_orthonormal(&a);
        let qtq = q.transpose().matmul(&q);
        assert!(qtq.max_abs_diff(&Matrix::identity(3)) < 1e-12);
    }

    #[test]
    fn invert_round_trip() {
        let a = Matrix::from_rows(&[vec![4.0, 1.0, 0.0], vec![1.0, 3.0, -1.0], vec![0.0, -1.0, 2.0]]);
        let inv = invert(&a).unwrap();
        assert!(a.matmul(&inv).max_abs_diff(&Matrix::identity(3)) < 1e-12);
        assert!(invert(&Matrix::zeros(2, 2)).is_none());
        let singular = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(invert(&singular).is_none());
    }

    #[test]
    fn outer_update() {
        let mut m = Matrix::zeros(2, 2);
        m.add_outer(2.0, &[1.0, 0.5], &[3.0, -1.0]);
        assert_eq!(m[(0, 0)], 6.0);
        assert_eq!(m[(0, 1)], -2.0);
        assert_eq!(m[(1, 0)], 3.0);
        assert_eq!(m[(1, 1)], -1.0);
    }
}
