//! Independent cross-checks for the eigensolvers, kept deliberately free of
//! any eigensolver code: characteristic polynomials by cofactor expansion
//! over exact polynomial arithmetic, and expansion of a root multiset into
//! coefficients. Exponential in the matrix order; meant for m ≤ 6.

use crate::linalg::Matrix;

/// Polynomial with ascending coefficients: p[0] + p[1] x + ...
type Poly = Vec<f64>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_scaled(acc: &mut Poly, p: &Poly, s: f64) {
    if acc.len() < p.len() {
        acc.resize(p.len(), 0.0);
    }
    for (slot, &v) in acc.iter_mut().zip(p) {
        *slot += s * v;
    }
}

/// Determinant of a matrix of polynomials, cofactor expansion on row 0.
fn det_poly(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc: Poly = vec![0.0];
    for (j, entry) in m[0].iter().enumerate() {
        if entry.iter().all(|&c| c == 0.0) {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let term = poly_mul(entry, &det_poly(&minor));
        poly_add_scaled(&mut acc, &term, sign);
    }
    acc
}

/// Coefficients of det(xI − A), ascending powers, degree = order of `a`.
pub fn char_poly(a: &Matrix) -> Vec<f64> {
    assert!(a.is_square());
    let n = a.rows();
    assert!(n >= 1 && n <= 6, "cofactor expansion is for m <= 6");
    let entries: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        vec![-a[(i, j)], 1.0]
                    } else {
                        vec![-a[(i, j)]]
                    }
                })
                .collect()
        })
        .collect();
    let mut p = det_poly(&entries);
    p.resize(n + 1, 0.0);
    p
}

/// Expand Π (x − λ_j) for a multiset of complex roots into real ascending
/// coefficients. Imaginary parts cancel when the roots come in conjugate
/// pairs; the residue is returned alongside so callers can assert on it.
pub fn poly_from_roots(roots: &[(f64, f64)]) -> (Vec<f64>, f64) {
    let mut coeffs: Vec<(f64, f64)> = vec![(1.0, 0.0)];
    for &(re, im) in roots {
        let mut next = vec![(0.0, 0.0); coeffs.len() + 1];
        for (i, &(cr, ci)) in coeffs.iter().enumerate() {
            // x * c
            next[i + 1].0 += cr;
            next[i + 1].1 += ci;
            // -λ * c
            next[i].0 -= re * cr - im * ci;
            next[i].1 -= re * ci + im * cr;
        }
        coeffs = next;
    }
    let residue = coeffs.iter().fold(0.0_f64, |m, &(_, i)| m.max(i.abs()));
    (coeffs.iter().map(|&(r, _)| r).collect(), residue)
}
