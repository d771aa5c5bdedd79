//! Cyclic Jacobi eigensolver for small dense Hermitian matrices.

use num_complex::Complex64;

use crate::types::{ONE, ZERO};

/// Sweeps stop once the off-diagonal Frobenius norm drops to this value.
pub const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<Complex64>>,
    pub sweeps: usize,
}

fn off_diagonal_norm(a: &[Vec<Complex64>]) -> f64 {
    let n = a.len();
    let mut sum = 0.0;
    for (p, row) in a.iter().enumerate() {
        for (q, x) in row.iter().enumerate().take(n) {
            if p != q {
                sum += x.norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Diagonalize a Hermitian matrix. Only the Hermitian part of the input is
/// meaningful; rotations are applied in row-cyclic order `(0,1), (0,2), ...`.
pub fn hermitian_eigen(matrix: &[Vec<Complex64>]) -> HermitianEigen {
    let n = matrix.len();
    let mut a: Vec<Vec<Complex64>> = matrix.to_vec();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { ONE } else { ZERO }).collect())
        .collect();

    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS && off_diagonal_norm(&a) > OFF_DIAGONAL_TOL {
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                let phase = apq / g;
                let theta = (a[q][q].re - a[p][p].re) / (2.0 * g);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // U = diag phase fix on q, then a real Givens rotation
                let u_pp = Complex64::new(c, 0.0);
                let u_pq = Complex64::new(s, 0.0);
                let u_qp = -phase.conj() * s;
                let u_qq = phase.conj() * c;

                for row in a.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = x * u_pp + y * u_qp;
                    row[q] = x * u_pq + y * u_qq;
                }
                for k in 0..n {
                    let (x, y) = (a[p][k], a[q][k]);
                    a[p][k] = u_pp.conj() * x + u_qp.conj() * y;
                    a[q][k] = u_pq.conj() * x + u_qq.conj() * y;
                }
                a[p][q] = ZERO;
                a[q][p] = ZERO;
                a[p][p].im = 0.0;
                a[q][q].im = 0.0;
                for row in v.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = x * u_pp + y * u_qp;
                    row[q] = x * u_pq + y * u_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].re.total_cmp(&a[i][i].re).then(i.cmp(&j)));
    HermitianEigen {
        values: order.iter().map(|&k| a[k][k].re).collect(),
        vectors: order
            .iter()
            .map(|&k| (0..n).map(|i| v[i][k]).collect())
            .collect(),
        sweeps,
    }
}
