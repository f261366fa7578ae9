//! Pauli dynamical semigroups and the Pauli channels they generate.
//!
//! A process is fixed by three nonnegative decay rates `(g1, g2, g3)`
//! attached to `sigma_x, sigma_y, sigma_z`. At time `t` it acts as the Pauli
//! channel `rho -> sum_k p_k(t) sigma_k rho sigma_k`, where the probabilities
//! are the Hadamard transform of the exponential damping factors of the
//! three Bloch components.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, HermitianMatrix};

/// Tolerance on the normalisation and nonnegativity of probability vectors.
pub const PROB_TOL: f64 = 1e-12;
/// Tolerance on unit trace and Hermiticity of density matrices.
pub const DENSITY_TOL: f64 = 1e-12;
/// Smallest eigenvalue accepted for a density matrix.
pub const EIGEN_FLOOR: f64 = -1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Pauli matrix `sigma_k` in row-major order, with `sigma_0` the identity.
pub fn pauli(k: usize) -> [Complex64; 4] {
    match k {
        0 => [ONE, ZERO, ZERO, ONE],
        1 => [ZERO, ONE, ONE, ZERO],
        2 => [ZERO, -I, I, ZERO],
        3 => [ONE, ZERO, ZERO, -ONE],
        _ => panic!("Pauli index {k} out of range"),
    }
}

/// The 4x4 Sylvester-Hadamard matrix relating damping factors and Pauli
/// probabilities.
pub fn hadamard4() -> [[i32; 4]; 4] {
    [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]]
}

/// Decay rates of a Pauli dynamical map, one per Pauli axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayRates([f64; 3]);

impl DecayRates {
    pub fn new(gamma: [f64; 3]) -> Result<Self> {
        for (index, &value) in gamma.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidRate { index, value });
            }
        }
        Ok(Self(gamma))
    }

    /// Dephasing about the z axis: `(0, 0, gamma)`.
    pub fn dephasing_z(gamma: f64) -> Result<Self> {
        Self::new([0.0, 0.0, gamma])
    }

    /// Dephasing about the x axis: `(gamma, 0, 0)`.
    pub fn dephasing_x(gamma: f64) -> Result<Self> {
        Self::new([gamma, 0.0, 0.0])
    }

    /// Equal decay in the xy plane: `(gamma, gamma, 0)`.
    pub fn coplanar(gamma: f64) -> Result<Self> {
        Self::new([gamma, gamma, 0.0])
    }

    pub fn depolarising(gamma: f64) -> Result<Self> {
        Self::new([gamma, gamma, gamma])
    }

    pub fn gamma(&self) -> [f64; 3] {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&g| g == 0.0)
    }

    /// Exponent rates `s_l` with `A_l(t) = exp(-s_l t)`; `s_0` is always 0.
    pub fn exponent_rates(&self) -> [f64; 4] {
        let [g1, g2, g3] = self.0;
        [0.0, 2.0 * (g2 + g3), 2.0 * (g1 + g3), 2.0 * (g1 + g2)]
    }
}

/// Damping factors `A(t)` of the Bloch components; `a[0] = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentVector([f64; 4]);

impl ExponentVector {
    pub fn components(&self) -> [f64; 4] {
        self.0
    }
}

/// Probabilities `(p0, p1, p2, p3)` of applying `I, sigma_x, sigma_y, sigma_z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliProbVector([f64; 4]);

impl PauliProbVector {
    pub fn new(p: [f64; 4]) -> Result<Self> {
        let sum: f64 = p.iter().sum();
        if p.iter().any(|x| !x.is_finite() || *x < -PROB_TOL) || (sum - 1.0).abs() > PROB_TOL {
            return Err(Error::InvalidParameter(format!(
                "{p:?} is not a probability vector"
            )));
        }
        Ok(Self(p))
    }

    pub fn identity() -> Self {
        Self([1.0, 0.0, 0.0, 0.0])
    }

    pub fn probabilities(&self) -> [f64; 4] {
        self.0
    }

    /// Probabilities of the composed channel `self` after `other`.
    ///
    /// Pauli products multiply as the group Z2 x Z2 (up to phases, which
    /// cancel in `sigma rho sigma`), so with labels I=0, X=1, Y=2, Z=3 the
    /// label of `sigma_i sigma_j` is `i ^ j`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = [0.0; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i ^ j] += self.0[i] * other.0[j];
            }
        }
        Self(out)
    }
}

fn check_time(t: f64) -> Result<()> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidTime(t));
    }
    Ok(())
}

pub fn exponent_vector(rates: &DecayRates, t: f64) -> Result<ExponentVector> {
    check_time(t)?;
    let s = rates.exponent_rates();
    Ok(ExponentVector([
        1.0,
        (-s[1] * t).exp(),
        (-s[2] * t).exp(),
        (-s[3] * t).exp(),
    ]))
}

fn hadamard_transform(a: [f64; 4]) -> [f64; 4] {
    let h = hadamard4();
    let mut p = [0.0; 4];
    for k in 0..4 {
        p[k] = 0.25 * (0..4).map(|l| h[k][l] as f64 * a[l]).sum::<f64>();
    }
    p
}

/// Pauli probabilities of the channel reached at time `t`.
pub fn channel_probabilities(rates: &DecayRates, t: f64) -> Result<PauliProbVector> {
    let a = exponent_vector(rates, t)?;
    Ok(PauliProbVector(hadamard_transform(a.0)))
}

/// The `t -> infinity` limit, decided by which exponent rates vanish exactly.
pub fn stationary_probabilities(rates: &DecayRates) -> PauliProbVector {
    let s = rates.exponent_rates();
    let a = s.map(|rate| if rate == 0.0 { 1.0 } else { 0.0 });
    PauliProbVector(hadamard_transform(a))
}

/// A qubit or two-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        let h = HermitianMatrix::new(dim, data)?;
        let trace: Complex64 = (0..dim).map(|i| h.get(i, i)).sum();
        if (trace.re - 1.0).abs() > DENSITY_TOL || trace.im.abs() > DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace is {trace}")));
        }
        let min_eig = linalg::eigenvalues_hermitian(&h)[0];
        if min_eig < EIGEN_FLOOR {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(Self {
            dim,
            data: h.data().to_vec(),
        })
    }

    /// `|psi><psi|` for a nonzero state vector of length 2 or 4; the vector is
    /// normalised first.
    pub fn from_pure_state(psi: &[Complex64]) -> Result<Self> {
        let dim = psi.len();
        if dim != 2 && dim != 4 {
            return Err(Error::UnsupportedDimension(dim));
        }
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidDensityMatrix("zero state vector".into()));
        }
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                data[i * dim + j] = psi[i] * psi[j].conj() / (norm * norm);
            }
        }
        linalg::symmetrize(dim, &mut data);
        Ok(Self { dim, data })
    }

    /// Qubit state `(I + x sigma_x + y sigma_y + z sigma_z) / 2`.
    pub fn from_bloch(bloch: [f64; 3]) -> Result<Self> {
        let [x, y, z] = bloch;
        let r = (x * x + y * y + z * z).sqrt();
        if !(r <= 1.0 + 1e-12) {
            return Err(Error::InvalidDensityMatrix(format!(
                "Bloch vector length {r} exceeds 1"
            )));
        }
        let data = vec![
            Complex64::new(0.5 * (1.0 + z), 0.0),
            Complex64::new(0.5 * x, -0.5 * y),
            Complex64::new(0.5 * x, 0.5 * y),
            Complex64::new(0.5 * (1.0 - z), 0.0),
        ];
        Ok(Self { dim: 2, data })
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim != 2 && dim != 4 {
            return Err(Error::UnsupportedDimension(dim));
        }
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0 / dim as f64, 0.0);
        }
        Ok(Self { dim, data })
    }

    /// `|Phi+> = (|00> + |11>) / sqrt(2)`.
    pub fn bell_phi_plus() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_pure_state(&[Complex64::new(s, 0.0), ZERO, ZERO, Complex64::new(s, 0.0)])
            .expect("Bell state is a valid pure state")
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

    pub fn to_hermitian(&self) -> HermitianMatrix {
        HermitianMatrix::new(self.dim, self.data.clone())
            .expect("density matrices are Hermitian by construction")
    }

    /// Max-entry distance to another matrix of the same dimension.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn pauli_sum(p: &PauliProbVector, rho: &DensityMatrix, ops: &[Vec<Complex64>; 4]) -> DensityMatrix {
    let dim = rho.dim;
    let mut out = vec![ZERO; dim * dim];
    for (k, op) in ops.iter().enumerate() {
        let w = p.0[k];
        if w == 0.0 {
            continue;
        }
        let conj = linalg::mat_mul(dim, &linalg::mat_mul(dim, op, &rho.data), op);
        for (o, c) in out.iter_mut().zip(conj) {
            *o += c * w;
        }
    }
    linalg::symmetrize(dim, &mut out);
    DensityMatrix { dim, data: out }
}

/// `sum_k p_k sigma_k rho sigma_k` on a single qubit.
pub fn apply_channel(p: &PauliProbVector, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: rho.dim,
        });
    }
    let ops = [0, 1, 2, 3].map(|k| pauli(k).to_vec());
    Ok(pauli_sum(p, rho, &ops))
}

/// The channel applied to the first qubit of a two-qubit state, identity on
/// the second.
pub fn apply_channel_extended(p: &PauliProbVector, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: rho.dim,
        });
    }
    let id = pauli(0);
    let ops = [0, 1, 2, 3].map(|k| linalg::kron(2, &pauli(k), 2, &id));
    Ok(pauli_sum(p, rho, &ops))
}
