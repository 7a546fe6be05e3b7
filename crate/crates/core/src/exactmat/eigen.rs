//! Cyclic Jacobi eigensolver for small dense symmetric matrices.

use super::Matrix;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues (ascending) and matching unit eigenvectors of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    /// `vectors[k]` is the eigenvector for `values[k]`.
    pub vectors: Vec<Vec<f64>>,
}

impl SymmetricEigen {
    pub fn min(&self) -> Option<(f64, &[f64])> {
        self.values.first().map(|&v| (v, self.vectors[0].as_slice()))
    }
}

/// Runs cyclic Jacobi on `(A + Aᵀ)/2`. The caller checks squareness.
pub fn jacobi_eigen(a: &Matrix<f64>) -> SymmetricEigen {
    let n = a.rows();
    let mut m: Vec<Vec<f64>> =
        (0..n).map(|i| (0..n).map(|j| 0.5 * (a[(i, j)] + a[(j, i)])).collect()).collect();
    let mut v: Vec<Vec<f64>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();

    let scale = m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j] * m[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * scale * 1e-2 || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q] == 0.0 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[x][x].total_cmp(&m[y][y]));
    SymmetricEigen {
        values: order.iter().map(|&k| m[k][k]).collect(),
        vectors: order.iter().map(|&k| (0..n).map(|i| v[i][k]).collect()).collect(),
    }
}

/// Rayleigh quotient `xᵀAx / xᵀx`, used to re-verify eigenvalue certificates.
pub fn rayleigh_quotient(a: &Matrix<f64>, x: &[f64]) -> f64 {
    let n = a.rows();
    let num: f64 = (0..n).map(|i| x[i] * (0..n).map(|j| a[(i, j)] * x[j]).sum::<f64>()).sum();
    let den: f64 = x.iter().map(|v| v * v).sum();
    num / den
}
