//! Small dense Hermitian linear algebra.
//!
//! Only what the Helstrom bound needs: eigenvalues of 2x2 and 4x4 Hermitian
//! matrices and the trace norm. Matrices are stored row-major as flat
//! `Vec<Complex64>`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maximum allowed |m_ij - conj(m_ji)| for a matrix to count as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

const JACOBI_OFF_DIAG_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 64;

/// A complex Hermitian matrix of dimension 2 or 4.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Wraps row-major `data`, checking conjugate symmetry.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim != 2 && dim != 4 {
            return Err(Error::UnsupportedDimension(dim));
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: (data.len() as f64).sqrt() as usize,
            });
        }
        let dev = hermitian_deviation(dim, &data);
        if !(dev <= HERMITIAN_TOL) {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        let dim = diag.len();
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, &d) in diag.iter().enumerate() {
            data[i * dim + i] = Complex64::new(d, 0.0);
        }
        Self::new(dim, data)
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(dim, vec![Complex64::new(0.0, 0.0); dim * dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    /// Real linear combination `a*self + b*other`.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: other.dim,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| x * a + y * b)
            .collect();
        Ok(Self {
            dim: self.dim,
            data,
        })
    }

    pub fn scale(&self, a: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|x| x * a).collect(),
        }
    }

    /// `u * self * u^dagger` for a square `u` of matching dimension.
    pub fn conjugate_by(&self, u: &[Complex64]) -> Result<Self> {
        if u.len() != self.data.len() {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: (u.len() as f64).sqrt() as usize,
            });
        }
        let tmp = mat_mul(self.dim, u, &self.data);
        let mut data = mat_mul(self.dim, &tmp, &adjoint(self.dim, u));
        symmetrize(self.dim, &mut data);
        Ok(Self {
            dim: self.dim,
            data,
        })
    }
}

/// Largest |m_ij - conj(m_ji)| over all entries.
pub fn hermitian_deviation(dim: usize, data: &[Complex64]) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..dim {
        for j in i..dim {
            let d = (data[i * dim + j] - data[j * dim + i].conj()).norm();
            dev = dev.max(d);
        }
    }
    dev
}

/// Replaces `m` by `(m + m^dagger) / 2`.
pub fn symmetrize(dim: usize, m: &mut [Complex64]) {
    for i in 0..dim {
        m[i * dim + i].im = 0.0;
        for j in (i + 1)..dim {
            let avg = (m[i * dim + j] + m[j * dim + i].conj()) * 0.5;
            m[i * dim + j] = avg;
            m[j * dim + i] = avg.conj();
        }
    }
}

pub fn mat_mul(dim: usize, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i * dim + k];
            if aik.re == 0.0 && aik.im == 0.0 {
                continue;
            }
            for j in 0..dim {
                out[i * dim + j] += aik * b[k * dim + j];
            }
        }
    }
    out
}

pub fn adjoint(dim: usize, a: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            out[j * dim + i] = a[i * dim + j].conj();
        }
    }
    out
}

/// Kronecker product of two square matrices.
pub fn kron(da: usize, a: &[Complex64], db: usize, b: &[Complex64]) -> Vec<Complex64> {
    let n = da * db;
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..da {
        for j in 0..da {
            let aij = a[i * da + j];
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k) * n + (j * db + l)] = aij * b[k * db + l];
                }
            }
        }
    }
    out
}

/// Real eigenvalues of a Hermitian matrix, in ascending order.
///
/// Dimension 2 uses the closed-form quadratic. Dimension 4 embeds the
/// matrix as the real symmetric 8x8 block `[[Re, -Im], [Im, Re]]`, whose
/// spectrum is the original one with every eigenvalue doubled, and
/// diagonalises it with cyclic Jacobi rotations.
pub fn eigenvalues_hermitian(m: &HermitianMatrix) -> Vec<f64> {
    match m.dim {
        2 => {
            let a = m.data[0].re;
            let d = m.data[3].re;
            let b = m.data[1].norm();
            let mean = 0.5 * (a + d);
            let half = 0.5 * (a - d);
            let radius = half.hypot(b);
            vec![mean - radius, mean + radius]
        }
        4 => {
            let n = 8;
            let mut s = vec![0.0; n * n];
            for i in 0..4 {
                for j in 0..4 {
                    let z = m.data[i * 4 + j];
                    s[i * n + j] = z.re;
                    s[(i + 4) * n + (j + 4)] = z.re;
                    s[i * n + (j + 4)] = -z.im;
                    s[(i + 4) * n + j] = z.im;
                }
            }
            let mut ev = jacobi_eigenvalues(n, s);
            ev.sort_by(f64::total_cmp);
            ev.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect()
        }
        _ => unreachable!("HermitianMatrix only admits dimensions 2 and 4"),
    }
}

/// Cyclic Jacobi on a real symmetric `n x n` matrix; returns the diagonal
/// once the off-diagonal Frobenius norm drops below tolerance.
fn jacobi_eigenvalues(n: usize, mut a: Vec<f64>) -> Vec<f64> {
    let scale = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off < JACOBI_OFF_DIAG_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

/// Trace norm of a Hermitian matrix: the sum of absolute eigenvalues.
pub fn trace_norm(m: &HermitianMatrix) -> f64 {
    eigenvalues_hermitian(m).iter().map(|l| l.abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_and_sigma_z() {
        let id = HermitianMatrix::from_real_diagonal(&[1.0, 1.0]).unwrap();
        assert_eq!(eigenvalues_hermitian(&id), vec![1.0, 1.0]);
        let z = HermitianMatrix::from_real_diagonal(&[1.0, -1.0]).unwrap();
        assert_eq!(eigenvalues_hermitian(&z), vec![-1.0, 1.0]);
        assert_eq!(trace_norm(&z), 2.0);
    }

    #[test]
    fn diagonal_four() {
        let m = HermitianMatrix::from_real_diagonal(&[0.3, 0.1, 0.4, 0.2]).unwrap();
        let ev = eigenvalues_hermitian(&m);
        for (got, want) in ev.iter().zip([0.1, 0.2, 0.3, 0.4]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_matrix_has_zero_norm() {
        assert_eq!(trace_norm(&HermitianMatrix::zeros(4).unwrap()), 0.0);
        assert_eq!(trace_norm(&HermitianMatrix::zeros(2).unwrap()), 0.0);
    }

    #[test]
    fn sigma_y_like_four() {
        // sigma_y (x) I has eigenvalues -1, -1, 1, 1.
        let sy = [c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)];
        let id = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let m = HermitianMatrix::new(4, kron(2, &sy, 2, &id)).unwrap();
        let ev = eigenvalues_hermitian(&m);
        for (got, want) in ev.iter().zip([-1.0, -1.0, 1.0, 1.0]) {
            assert!((got - want).abs() < 1e-12, "{ev:?}");
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = vec![c(1.0, 0.0), c(0.5, 0.0), c(0.4, 0.0), c(1.0, 0.0)];
        assert!(matches!(
            HermitianMatrix::new(2, m),
            Err(Error::NotHermitian(_))
        ));
        let m = vec![c(1.0, 1e-3), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        assert!(HermitianMatrix::new(2, m).is_err());
    }

    #[test]
    fn rejects_other_dimensions() {
        assert_eq!(
            HermitianMatrix::zeros(3).unwrap_err(),
            Error::UnsupportedDimension(3)
        );
    }

    #[test]
    fn two_by_two_matches_jacobi() {
        let m = [c(0.3, 0.0), c(0.1, -0.2), c(0.1, 0.2), c(-0.7, 0.0)];
        let h = HermitianMatrix::new(2, m.to_vec()).unwrap();
        let closed = eigenvalues_hermitian(&h);
        let mut jac = jacobi_eigenvalues(
            4,
            vec![
                0.3, 0.1, 0.0, 0.2, 0.1, -0.7, -0.2, 0.0, 0.0, -0.2, 0.3, 0.1, 0.2, 0.0, 0.1, -0.7,
            ],
        );
        jac.sort_by(f64::total_cmp);
        assert!((closed[0] - jac[0]).abs() < 1e-12);
        assert!((closed[1] - jac[3]).abs() < 1e-12);
    }
}
