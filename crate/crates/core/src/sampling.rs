//! Random test instances: Pauli channels, priors and decay rates.

use rand::Rng;

use crate::discrimination::Priors;
use crate::pauli_dynamics::{DecayRates, PauliProbVector};

/// Uniform sample from the probability simplex in four dimensions.
pub fn random_prob_vector<R: Rng + ?Sized>(rng: &mut R) -> PauliProbVector {
    let e: [f64; 4] = [(); 4].map(|_| -(1.0 - rng.random::<f64>()).ln());
    let total: f64 = e.iter().sum();
    PauliProbVector::new(e.map(|x| x / total)).expect("normalised exponentials")
}

pub fn random_priors<R: Rng + ?Sized>(rng: &mut R) -> Priors {
    Priors::new(rng.random::<f64>()).expect("uniform in [0, 1)")
}

/// Rates with each component uniform in `[0, max_rate)`.
pub fn random_rates<R: Rng + ?Sized>(rng: &mut R, max_rate: f64) -> DecayRates {
    DecayRates::new([(); 3].map(|_| max_rate * rng.random::<f64>())).expect("nonnegative")
}

/// Log-uniform positive rate in `[lo, hi)`.
pub fn log_uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (lo.ln() + (hi.ln() - lo.ln()) * rng.random::<f64>()).exp()
}
