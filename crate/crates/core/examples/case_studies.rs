//! The five analytic case studies, each cross-checked by the optimiser.
//!
//! Run with `cargo run --example case_studies`.

use pauli_discrimination::discrimination::Priors;
use pauli_discrimination::scenarios::{solve, ScenarioKind};
use pauli_discrimination::time_opt::{minimize_error, MinimizeConfig, OptimalTime, StrategyMode};

fn show(t: &OptimalTime) -> String {
    t.finite()
        .map_or_else(|| "inf".to_string(), |t| format!("{t:.6}"))
}

fn main() -> pauli_discrimination::Result<()> {
    let cases = [
        (ScenarioKind::SameAxisDephasing, 1.0, 0.25),
        (ScenarioKind::OrthogonalDephasing, 1.0, 0.5),
        (ScenarioKind::Coplanar, 1.0, 0.2),
        (ScenarioKind::Depolarising, 1.0, 0.2),
        (ScenarioKind::DepolVsDephasing, 1.0, 0.2),
        (ScenarioKind::DepolVsDephasing, 1.0, 0.5),
    ];
    for (kind, g1, g2) in cases {
        let s = solve(kind, g1, g2)?;
        let times: Vec<String> = s.t_star_no_ent.iter().map(show).collect();
        println!("{kind} ({g1}, {g2}): advantage {}", s.advantage_regime);
        println!(
            "  separable  t* = [{}]  p* = {:.9}",
            times.join(", "),
            s.p_star_no_ent
        );
        println!(
            "  entangled  t* = {}  p* = {:.9}",
            show(&s.t_star_ent),
            s.p_star_ent
        );

        let (a, b) = s.spec.rates();
        let ent = minimize_error(
            &a,
            &b,
            &Priors::equal(),
            StrategyMode::Entangled,
            &MinimizeConfig::default(),
        )?;
        println!(
            "  optimiser  t* = {}  p* = {:.9}",
            show(&ent.t_star),
            ent.p_star
        );
    }
    Ok(())
}
