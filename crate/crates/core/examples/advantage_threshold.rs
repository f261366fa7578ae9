//! Largest dephasing/depolarising rate ratio at which an ancilla still beats
//! waiting forever.
//!
//! Run with `cargo run --release --example advantage_threshold`.

use pauli_discrimination::scenarios::{
    advantage_at_ratio, depol_vs_dephasing_candidate, find_advantage_threshold,
};

fn main() -> pauli_discrimination::Result<()> {
    for ratio in [0.1, 0.2, 0.3, 0.37, 0.38, 0.5, 1.0] {
        let candidate = depol_vs_dephasing_candidate(1.0, ratio)
            .map_or("none".to_string(), |(t, p)| {
                format!("t = {t:.5}, p = {p:.8}")
            });
        println!(
            "ratio {ratio:<5} advantage {:<5} interior candidate: {candidate}",
            advantage_at_ratio(ratio)?
        );
    }
    let search = find_advantage_threshold(1e-6)?;
    println!(
        "threshold {:.7} after {} bisection steps, bracket [{:.7}, {:.7}]",
        search.ratio, search.iterations, search.bracket.0, search.bracket.1
    );
    Ok(())
}
