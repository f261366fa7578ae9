//! Optimal discrimination time for an arbitrary pair of rate vectors.
//!
//! Run with `cargo run --example time_optimization`.

use pauli_discrimination::discrimination::Priors;
use pauli_discrimination::pauli_dynamics::DecayRates;
use pauli_discrimination::time_opt::{minimize_error, MinimizeConfig, OptimalTime, StrategyMode};

fn main() -> pauli_discrimination::Result<()> {
    let pairs = [
        ([0.0, 0.0, 1.0], [0.0, 0.0, 0.25]),
        ([1.0, 1.0, 0.0], [0.2, 0.2, 0.0]),
        ([0.0, 0.0, 1.0], [0.5, 0.0, 0.0]),
        ([0.3, 1.2, 0.1], [1.5, 0.2, 0.6]),
    ];
    let config = MinimizeConfig::default();
    for (g1, g2) in pairs {
        let (a, b) = (DecayRates::new(g1)?, DecayRates::new(g2)?);
        println!("{g1:?} vs {g2:?}");
        for mode in StrategyMode::ALL {
            let res = minimize_error(&a, &b, &Priors::equal(), mode, &config)?;
            let t = match res.t_star {
                OptimalTime::Finite(t) => format!("{t:.9}"),
                OptimalTime::AtInfinity => "infinity".into(),
                OptimalTime::Undefined => "undefined".into(),
            };
            let others: Vec<String> = res
                .minima
                .iter()
                .skip(1)
                .map(|m| format!("{:.9}", m.t))
                .collect();
            println!(
                "  {mode:<9} t* = {t:<12} p* = {:.12} (stationary {:.4}){}",
                res.p_star,
                res.stationary_p,
                if others.is_empty() {
                    String::new()
                } else {
                    format!(", tied at {}", others.join(", "))
                }
            );
        }
    }
    Ok(())
}
