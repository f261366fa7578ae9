//! Time evolution of a Pauli dynamical map and its action on states.
//!
//! Run with `cargo run --example pauli_channels`.

use pauli_discrimination::pauli_dynamics::{
    apply_channel, apply_channel_extended, channel_probabilities, stationary_probabilities,
    DecayRates, DensityMatrix,
};

fn main() -> pauli_discrimination::Result<()> {
    let rates = DecayRates::new([0.5, 0.2, 1.0])?;
    println!(
        "rates {:?}, exponent rates {:?}",
        rates.gamma(),
        rates.exponent_rates()
    );
    for t in [0.0, 0.5, 1.0, 2.0, 5.0] {
        let p = channel_probabilities(&rates, t)?;
        println!("t = {t:>4}: p = {:.6?}", p.probabilities());
    }
    println!(
        "t -> inf: p = {:?}",
        stationary_probabilities(&rates).probabilities()
    );

    // evolving for s then t is the same channel as evolving for s + t
    let (s, t) = (0.3, 0.9);
    let composed = channel_probabilities(&rates, s)?.compose(&channel_probabilities(&rates, t)?);
    println!("semigroup check: {:.3e}", {
        let direct = channel_probabilities(&rates, s + t)?.probabilities();
        composed
            .probabilities()
            .iter()
            .zip(direct)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    });

    let p = channel_probabilities(&rates, 1.0)?;
    let out = apply_channel(&p, &DensityMatrix::from_bloch([0.0, 0.0, 1.0])?)?;
    println!(
        "|0> after t = 1: diag = ({:.6}, {:.6})",
        out.get(0, 0).re,
        out.get(1, 1).re
    );

    // on half of |Phi+> the output is Bell-diagonal with weights p
    let bell = apply_channel_extended(&p, &DensityMatrix::bell_phi_plus())?;
    println!(
        "Phi+ fidelity after t = 1: {:.6} (p0 = {:.6})",
        {
            let d = bell.data();
            0.5 * (d[0] + d[3] + d[12] + d[15]).re
        },
        p.probabilities()[0]
    );
    Ok(())
}
