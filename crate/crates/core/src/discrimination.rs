//! Minimum-error discrimination of two Pauli channels.
//!
//! Closed forms work on the weighted difference `r_k = q1 p1_k - q2 p2_k`.
//! Without entanglement the best input is an eigenstate of one of the
//! three Pauli operators; with an ancilla any maximally entangled input is
//! optimal. The brute-force routines recompute both quantities from
//! explicit density matrices and the Helstrom bound, sharing nothing with
//! the closed forms beyond the channel probabilities themselves.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::pauli_dynamics::{
    apply_channel, apply_channel_extended, DensityMatrix, PauliProbVector,
};

/// Minimum Fibonacci-sphere size accepted by [`brute_force_no_ent`].
pub const MIN_GRID: usize = 16;

/// Tolerance within which the Bell input must reproduce the closed form.
pub const BELL_TOL: f64 = 1e-12;

/// Margin used when reporting a strict entanglement advantage.
pub const ADVANTAGE_MARGIN: f64 = 1e-14;

/// Prior probabilities of the two hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Priors {
    q1: f64,
    q2: f64,
}

impl Priors {
    pub fn new(q1: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&q1) {
            return Err(Error::InvalidPrior(q1));
        }
        Ok(Self { q1, q2: 1.0 - q1 })
    }

    pub fn equal() -> Self {
        Self { q1: 0.5, q2: 0.5 }
    }

    pub fn q1(&self) -> f64 {
        self.q1
    }

    pub fn q2(&self) -> f64 {
        self.q2
    }
}

impl Default for Priors {
    fn default() -> Self {
        Self::equal()
    }
}

/// Weighted difference of two Pauli probability vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RVector([f64; 4]);

impl RVector {
    pub fn components(&self) -> [f64; 4] {
        self.0
    }

    /// Builds an r-vector directly, for callers that already have one.
    pub fn from_components(r: [f64; 4]) -> Self {
        Self(r)
    }
}

pub fn r_vector(priors: &Priors, p1: &PauliProbVector, p2: &PauliProbVector) -> RVector {
    let a = p1.probabilities();
    let b = p2.probabilities();
    RVector([0, 1, 2, 3].map(|k| priors.q1 * a[k] - priors.q2 * b[k]))
}

/// Pauli eigenbasis used as input by the optimal separable strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Z,
    X,
    Y,
}

/// Separable error probability and the input axis that achieves it.
///
/// Ties go to the first of z, x, y.
pub fn error_prob_no_ent(r: &RVector) -> (f64, Axis) {
    let [r0, r1, r2, r3] = r.0;
    let candidates = [
        (Axis::Z, (r0 + r3).abs() + (r1 + r2).abs()),
        (Axis::X, (r0 + r1).abs() + (r2 + r3).abs()),
        (Axis::Y, (r0 + r2).abs() + (r1 + r3).abs()),
    ];
    let (axis, m) =
        candidates.iter().skip(1).fold(
            candidates[0],
            |best, &c| if c.1 > best.1 { c } else { best },
        );
    ((1.0 - m) / 2.0, axis)
}

/// Entanglement-assisted error probability `(1 - sum_k |r_k|) / 2`.
pub fn error_prob_ent(r: &RVector) -> f64 {
    (1.0 - r.0.iter().map(|x| x.abs()).sum::<f64>()) / 2.0
}

/// Whether an ancilla strictly helps: `r0 r1 r2 r3 < 0`.
pub fn entanglement_advantage(r: &RVector) -> bool {
    r.0.iter().product::<f64>() < 0.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscriminationReport {
    pub p_no_ent: f64,
    pub p_ent: f64,
    pub advantage: bool,
    pub optimal_axis: Axis,
}

impl DiscriminationReport {
    pub fn from_r(r: &RVector) -> Self {
        let (p_no_ent, optimal_axis) = error_prob_no_ent(r);
        let p_ent = error_prob_ent(r);
        Self {
            p_no_ent,
            p_ent,
            advantage: p_ent < p_no_ent - ADVANTAGE_MARGIN,
            optimal_axis,
        }
    }
}

pub fn discriminate(
    priors: &Priors,
    p1: &PauliProbVector,
    p2: &PauliProbVector,
) -> DiscriminationReport {
    DiscriminationReport::from_r(&r_vector(priors, p1, p2))
}

/// Helstrom bound `(1 - ||q1 rho1 - q2 rho2||_1) / 2`.
pub fn helstrom(q1: f64, rho1: &DensityMatrix, q2: f64, rho2: &DensityMatrix) -> Result<f64> {
    if rho1.dim() != rho2.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho1.dim(),
            actual: rho2.dim(),
        });
    }
    let diff = rho1.to_hermitian().combine(q1, &rho2.to_hermitian(), -q2)?;
    Ok((1.0 - linalg::trace_norm(&diff)) / 2.0)
}

/// `n` nearly uniform unit vectors on the sphere (Fibonacci lattice).
pub fn fibonacci_sphere(n: usize) -> Vec<[f64; 3]> {
    let golden_angle = std::f64::consts::PI * (3.0 - 5.0_f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let rho = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden_angle * i as f64;
            [rho * phi.cos(), rho * phi.sin(), z]
        })
        .collect()
}

/// Separable error probability by direct search over pure qubit inputs on a
/// Fibonacci grid of `n_grid` Bloch vectors. Always an upper bound on the
/// true optimum.
pub fn brute_force_no_ent(
    p1: &PauliProbVector,
    p2: &PauliProbVector,
    priors: &Priors,
    n_grid: usize,
) -> Result<f64> {
    if n_grid < MIN_GRID {
        return Err(Error::InvalidParameter(format!(
            "n_grid must be at least {MIN_GRID}, got {n_grid}"
        )));
    }
    fibonacci_sphere(n_grid)
        .par_iter()
        .map(|&bloch| {
            let rho = DensityMatrix::from_bloch(bloch)?;
            let out1 = apply_channel(p1, &rho)?;
            let out2 = apply_channel(p2, &rho)?;
            helstrom(priors.q1, &out1, priors.q2, &out2)
        })
        .try_reduce(|| f64::INFINITY, |a, b| Ok(a.min(b)))
}

/// Outcome of the entanglement-assisted brute-force check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntangledSearch {
    /// Helstrom error with the input `|Phi+>`.
    pub bell_value: f64,
    /// Closed-form `(1 - sum |r_k|) / 2`.
    pub closed_form: f64,
    /// Smallest error among the random inputs.
    pub best_sampled: f64,
    /// Overall minimum found.
    pub minimum: f64,
}

/// Haar-distributed two-qubit pure states, reproducible from `seed`.
pub fn random_two_qubit_states(n: usize, seed: u64) -> Vec<[Complex64; 4]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            [(); 4].map(|_| {
                Complex64::new(
                    StandardNormal.sample(&mut rng),
                    StandardNormal.sample(&mut rng),
                )
            })
        })
        .collect()
}

/// Helstrom error when the first qubit of `|Phi+>` is sent through the
/// unknown channel.
pub fn bell_input_error(
    p1: &PauliProbVector,
    p2: &PauliProbVector,
    priors: &Priors,
) -> Result<f64> {
    extended_error(p1, p2, priors, &DensityMatrix::bell_phi_plus())
}

fn extended_error(
    p1: &PauliProbVector,
    p2: &PauliProbVector,
    priors: &Priors,
    rho: &DensityMatrix,
) -> Result<f64> {
    let out1 = apply_channel_extended(p1, rho)?;
    let out2 = apply_channel_extended(p2, rho)?;
    helstrom(priors.q1, &out1, priors.q2, &out2)
}

/// Smallest Helstrom error over `n_samples` random two-qubit pure inputs.
pub fn sampled_ent_minimum(
    p1: &PauliProbVector,
    p2: &PauliProbVector,
    priors: &Priors,
    n_samples: usize,
    seed: u64,
) -> Result<f64> {
    random_two_qubit_states(n_samples, seed)
        .par_iter()
        .map(|psi| extended_error(p1, p2, priors, &DensityMatrix::from_pure_state(psi)?))
        .try_reduce(|| f64::INFINITY, |a, b| Ok(a.min(b)))
}

/// Entanglement-assisted error probability by explicit two-qubit
/// simulation: the Bell input plus `n_samples` random pure inputs.
///
/// Fails if the Bell input does not reproduce the closed form to
/// [`BELL_TOL`].
pub fn brute_force_ent(
    p1: &PauliProbVector,
    p2: &PauliProbVector,
    priors: &Priors,
    n_samples: usize,
    seed: u64,
) -> Result<EntangledSearch> {
    if n_samples == 0 {
        return Err(Error::InvalidParameter("n_samples must be positive".into()));
    }
    let bell_value = bell_input_error(p1, p2, priors)?;
    let closed_form = error_prob_ent(&r_vector(priors, p1, p2));
    if (bell_value - closed_form).abs() > BELL_TOL {
        return Err(Error::Numeric(format!(
            "Bell input gives {bell_value}, closed form {closed_form}"
        )));
    }
    let best_sampled = sampled_ent_minimum(p1, p2, priors, n_samples, seed)?;
    Ok(EntangledSearch {
        bell_value,
        closed_form,
        best_sampled,
        minimum: bell_value.min(best_sampled),
    })
}
