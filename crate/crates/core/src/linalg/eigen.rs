use super::{Matrix, SpdMatrix};
use crate::error::{Error, Result};

/// Default threshold on the largest absolute off-diagonal entry.
pub const DEFAULT_EIGEN_TOL: f64 = 1e-12;
pub const MAX_JACOBI_SWEEPS: usize = 100;

/// Spectrum of a symmetric matrix, ascending, with an orthogonal matrix whose
/// column `k` is the eigenvector of `eigenvalues[k]`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: Matrix,
}

impl EigenDecomposition {
    /// Builds a decomposition from a known spectrum and eigenvectors, sorting
    /// both ascending.
    pub fn from_parts(eigenvalues: Vec<f64>, eigenvectors: Matrix) -> Result<Self> {
        let n = eigenvalues.len();
        if eigenvectors.shape() != (n, n) {
            return Err(Error::InvalidArgument(format!(
                "{n} eigenvalues but a {}x{} eigenvector matrix",
                eigenvectors.rows(),
                eigenvectors.cols()
            )));
        }
        if eigenvalues.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("non-finite eigenvalue".into()));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eigenvalues[a].total_cmp(&eigenvalues[b]));
        let sorted = order.iter().map(|&k| eigenvalues[k]).collect();
        let vecs = Matrix::from_raw(
            n,
            n,
            (0..n)
                .flat_map(|i| order.iter().map(move |&k| (i, k)))
                .map(|(i, k)| eigenvectors.get(i, k))
                .collect(),
        );
        Ok(Self {
            eigenvalues: sorted,
            eigenvectors: vecs,
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &Matrix {
        &self.eigenvectors
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// `lambda_max / lambda_min`; infinite when the smallest eigenvalue is not positive.
    pub fn condition_number(&self) -> f64 {
        if self.min() <= 0.0 {
            f64::INFINITY
        } else {
            self.max() / self.min()
        }
    }

    /// `Q D Q'`.
    pub fn reconstruct(&self) -> Matrix {
        let q = &self.eigenvectors;
        let n = q.rows();
        let qd = Matrix::from_raw(
            n,
            n,
            (0..n)
                .flat_map(|i| (0..n).map(move |j| q.get(i, j) * self.eigenvalues[j]))
                .collect(),
        );
        qd.multiply(&q.transpose()).expect("square factors")
    }
}

/// Cyclic Jacobi diagonalization of a symmetric matrix.
///
/// Sweeps over every `(p, q)` pair with `p < q`, annihilating `a_pq` by a plane
/// rotation, until the largest absolute off-diagonal entry is below `tol`.
/// An entry that is negligible relative to its two diagonal entries is set to
/// zero instead of rotated.
pub fn symmetric_eigen(a: &SpdMatrix, tol: f64) -> Result<EigenDecomposition> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("eigen tolerance must be positive, got {tol}")));
    }
    let n = a.order();
    let mut w = a.as_matrix().as_slice().to_vec();
    let mut v = Matrix::identity(n).data;

    let mut off = max_off_diagonal(&w, n);
    let mut sweeps = 0;
    while off >= tol {
        if sweeps == MAX_JACOBI_SWEEPS {
            return Err(Error::EigenNoConvergence {
                sweeps,
                off_diagonal: off,
            });
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                rotate(&mut w, &mut v, n, p, q);
            }
        }
        sweeps += 1;
        off = max_off_diagonal(&w, n);
    }

    let values = (0..n).map(|i| w[i * n + i]).collect();
    EigenDecomposition::from_parts(values, Matrix::from_raw(n, n, v))
}

fn max_off_diagonal(w: &[f64], n: usize) -> f64 {
    let mut worst = 0.0_f64;
    for p in 0..n {
        for q in (p + 1)..n {
            worst = worst.max(w[p * n + q].abs());
        }
    }
    worst
}

fn rotate(w: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = w[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = w[p * n + p];
    let aqq = w[q * n + q];
    if apq.abs() <= f64::EPSILON * (app * aqq).abs().sqrt() {
        w[p * n + q] = 0.0;
        w[q * n + p] = 0.0;
        return;
    }

    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    w[p * n + p] = app - t * apq;
    w[q * n + q] = aqq + t * apq;
    w[p * n + q] = 0.0;
    w[q * n + p] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = w[r * n + p];
        let arq = w[r * n + q];
        let new_rp = c * arp - s * arq;
        let new_rq = s * arp + c * arq;
        w[r * n + p] = new_rp;
        w[p * n + r] = new_rp;
        w[r * n + q] = new_rq;
        w[q * n + r] = new_rq;
    }
    for r in 0..n {
        let vrp = v[r * n + p];
        let vrq = v[r * n + q];
        v[r * n + p] = c * vrp - s * vrq;
        v[r * n + q] = s * vrp + c * vrq;
    }
}
