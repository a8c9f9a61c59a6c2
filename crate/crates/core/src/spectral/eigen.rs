use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOLERANCE: f64 = 1e-11;

/// Eigenvalues of a real symmetric matrix, ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// Number of eigenvalues with `|λ| <= threshold`.
    pub fn count_near_zero(&self, threshold: f64) -> usize {
        self.eigenvalues.iter().filter(|v| v.abs() <= threshold).count()
    }
}

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
///
/// Symmetry is checked exactly. Iteration stops once the off-diagonal
/// Frobenius norm drops below `1e-11 · ‖M‖_F`; more than 100 sweeps is an
/// error.
pub fn symmetric_eigenvalues(m: &DenseMatrix) -> Result<Spectrum> {
    jacobi(m, false).map(|(s, _)| s)
}

/// Eigenvalues and orthonormal eigenvectors; column `j` of the returned
/// matrix belongs to `eigenvalues()[j]`.
pub fn symmetric_eigen(m: &DenseMatrix) -> Result<(Spectrum, DenseMatrix)> {
    jacobi(m, true).map(|(s, v)| (s, v.expect("vectors requested")))
}

fn jacobi(m: &DenseMatrix, want_vectors: bool) -> Result<(Spectrum, Option<DenseMatrix>)> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if let Some((row, col)) = m.asymmetry() {
        return Err(Error::NotSymmetric { row, col });
    }
    let n = m.rows();
    if n == 0 {
        return Err(Error::DimensionMismatch("empty matrix".into()));
    }
    let mut a = m.to_rows();
    let mut v = want_vectors.then(|| DenseMatrix::identity(n).to_rows());
    let target = OFF_DIAGONAL_TOLERANCE * m.norm_frobenius();

    let mut converged = false;
    for _ in 0..=MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, p, q, c, s, t);
                if let Some(v) = v.as_mut() {
                    for row in v.iter_mut() {
                        let (vp, vq) = (row[p], row[q]);
                        row[p] = c * vp - s * vq;
                        row[q] = s * vp + c * vq;
                    }
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    let eigenvalues = order.iter().map(|&i| a[i][i]).collect();
    let vectors = v.map(|v| {
        let mut out = DenseMatrix::zeros(n, n);
        for (col, &src) in order.iter().enumerate() {
            for (r, row) in v.iter().enumerate() {
                out.set(r, col, row[src]);
            }
        }
        out
    });
    Ok((Spectrum { eigenvalues }, vectors))
}

fn off_diagonal_norm(a: &[Vec<f64>]) -> f64 {
    let mut sum = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j {
                sum += x * x;
            }
        }
    }
    sum.sqrt()
}

// Similarity transform by the rotation in the (p, q) plane that zeroes a[p][q].
fn rotate(a: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64, t: f64) {
    let n = a.len();
    let apq = a[p][q];
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let (akp, akq) = (a[k][p], a[k][q]);
        let new_kp = c * akp - s * akq;
        let new_kq = s * akp + c * akq;
        a[k][p] = new_kp;
        a[p][k] = new_kp;
        a[k][q] = new_kq;
        a[q][k] = new_kq;
    }
    a[p][p] -= t * apq;
    a[q][q] += t * apq;
    a[p][q] = 0.0;
    a[q][p] = 0.0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, laplacian_matrix};

    #[test]
    fn small_examples() {
        let s = symmetric_eigenvalues(&DenseMatrix::identity(3)).unwrap();
        assert_eq!(s.eigenvalues(), &[1.0, 1.0, 1.0]);
        let m = DenseMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 2.0]]).unwrap();
        assert_eq!(symmetric_eigenvalues(&m).unwrap().eigenvalues(), &[2.0, 2.0]);
        let s = symmetric_eigenvalues(&laplacian_matrix(&complete_graph(4)).unwrap()).unwrap();
        for (got, want) in s.eigenvalues().iter().zip([0.0, 4.0, 4.0, 4.0]) {
            assert!((got - want).abs() < 1e-8);
        }
    }

    #[test]
    fn rejects_asymmetric() {
        let m = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0 + 1e-15, 1.0]]).unwrap();
        assert!(matches!(symmetric_eigenvalues(&m), Err(Error::NotSymmetric { .. })));
        assert!(matches!(
            symmetric_eigenvalues(&DenseMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn known_tridiagonal_spectrum() {
        // path Laplacian-like tridiag(−1, 2, −1): eigenvalues 2 − 2cos(jπ/(n+1))
        let n = 12;
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 2.0);
            if i + 1 < n {
                m.set(i, i + 1, -1.0);
                m.set(i + 1, i, -1.0);
            }
        }
        let s = symmetric_eigenvalues(&m).unwrap();
        for (j, got) in s.eigenvalues().iter().enumerate() {
            let want = 2.0 - 2.0 * (((j + 1) as f64) * std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert!((got - want).abs() < 1e-10, "{j}: {got} vs {want}");
        }
    }

    #[test]
    fn eigenvectors_diagonalize() {
        let m = DenseMatrix::from_rows(&[
            vec![4.0, 1.0, -2.0, 0.5],
            vec![1.0, 3.0, 0.0, 1.0],
            vec![-2.0, 0.0, 5.0, -1.0],
            vec![0.5, 1.0, -1.0, 2.0],
        ])
        .unwrap();
        let (s, v) = symmetric_eigen(&m).unwrap();
        for j in 0..4 {
            let col: Vec<f64> = (0..4).map(|i| v.get(i, j)).collect();
            let mv = m.mul_vec(&col).unwrap();
            for i in 0..4 {
                assert!((mv[i] - s.eigenvalues()[j] * col[i]).abs() < 1e-10);
            }
        }
        let vtv = v.transpose().mul(&v).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((vtv.get(i, j) - want).abs() < 1e-12);
            }
        }
    }
}
