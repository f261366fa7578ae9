//! Minimum-error discrimination of two Pauli dynamical maps.
//!
//! Given two qubit processes generated by Pauli decay rates, the crate
//! computes the error probability of telling them apart at time `t`, with
//! and without an entangled ancilla, and optimises that error over `t`.
//!
//! Modules, bottom-up:
//!
//! - [`pauli_dynamics`]: decay rates to time-dependent Pauli channels, and
//!   channel action on explicit density matrices.
//! - [`linalg`]: Hermitian eigenvalues and trace norm for 2x2 and 4x4.
//! - [`discrimination`]: closed-form error probabilities, the entanglement
//!   advantage criterion, and brute-force Helstrom oracles.
//! - [`time_opt`]: time curves and the optimiser over `t in (0, inf)`.
//! - [`scenarios`]: analytic case studies and the advantage threshold.
//! - [`cli`]: the `pauli-discrim` command-line front end.
//!
//! Runnable examples live in `examples/`; see the README for the list.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod discrimination;
pub mod error;
pub mod linalg;
pub mod pauli_dynamics;
pub mod sampling;
pub mod scenarios;
pub mod time_opt;

pub use discrimination::{
    brute_force_ent, brute_force_no_ent, discriminate, entanglement_advantage, error_prob_ent,
    error_prob_no_ent, helstrom, r_vector, Axis, DiscriminationReport, Priors, RVector,
};
pub use error::{Error, Result};
pub use pauli_dynamics::{
    apply_channel, apply_channel_extended, channel_probabilities, stationary_probabilities,
    DecayRates, DensityMatrix, PauliProbVector,
};
pub use scenarios::{
    find_advantage_threshold, solve, ScenarioKind, ScenarioSolution, ScenarioSpec,
};
pub use time_opt::{
    curve, error_at, minimize_error, ErrorCurve, MinimizeConfig, OptimalTime, OptimizationResult,
    StrategyMode,
};
