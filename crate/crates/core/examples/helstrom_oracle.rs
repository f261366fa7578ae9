//! Closed-form error probabilities against explicit Helstrom computations.
//!
//! Run with `cargo run --release --example helstrom_oracle`.

use pauli_discrimination::discrimination::{
    brute_force_ent, brute_force_no_ent, discriminate, Priors,
};
use pauli_discrimination::pauli_dynamics::PauliProbVector;

fn main() -> pauli_discrimination::Result<()> {
    let p1 = PauliProbVector::new([0.55, 0.25, 0.05, 0.15])?;
    let p2 = PauliProbVector::new([0.45, 0.05, 0.30, 0.20])?;
    let priors = Priors::new(0.6)?;

    let report = discriminate(&priors, &p1, &p2);
    println!(
        "closed form:  separable {:.10} (axis {:?}), entangled {:.10}, advantage {}",
        report.p_no_ent, report.optimal_axis, report.p_ent, report.advantage
    );

    for n in [100, 1_000, 10_000] {
        let brute = brute_force_no_ent(&p1, &p2, &priors, n)?;
        println!(
            "Bloch grid n = {n:>6}: {brute:.10} (gap {:.2e})",
            brute - report.p_no_ent
        );
    }

    let search = brute_force_ent(&p1, &p2, &priors, 2_000, 11)?;
    println!(
        "Bell input:   {:.10} (closed form {:.10})",
        search.bell_value, search.closed_form
    );
    println!(
        "best of 2000 random two-qubit inputs: {:.10}",
        search.best_sampled
    );
    Ok(())
}
