//! Analytic case studies for pairs of structured Pauli processes.
//!
//! Each kind fixes the shape of both decay-rate vectors up to one rate per
//! process. For every kind this module provides the time-resolved error
//! probabilities and the optimal times and errors in closed form, which
//! serve as oracles for the general numeric optimiser.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::discrimination::Priors;
use crate::error::{Error, Result};
use crate::pauli_dynamics::DecayRates;
use crate::time_opt::{minimize_error, MinimizeConfig, OptimalTime, StrategyMode};

/// Tolerance, in time, for the root of the coplanar stationarity condition.
pub const COPLANAR_ROOT_TOL: f64 = 1e-12;

/// Refinement tolerance used when deciding whether the error dips below 1/4.
pub const THRESHOLD_REFINE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    /// Dephasing about z for both processes.
    SameAxisDephasing,
    /// Dephasing about z versus dephasing about x.
    OrthogonalDephasing,
    /// Rates `(g, g, 0)` for both processes.
    Coplanar,
    /// Rates `(g, g, g)` for both processes.
    Depolarising,
    /// Depolarising process versus z dephasing.
    DepolVsDephasing,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 5] = [
        ScenarioKind::SameAxisDephasing,
        ScenarioKind::OrthogonalDephasing,
        ScenarioKind::Coplanar,
        ScenarioKind::Depolarising,
        ScenarioKind::DepolVsDephasing,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ScenarioKind::SameAxisDephasing => "same_axis_dephasing",
            ScenarioKind::OrthogonalDephasing => "orthogonal_dephasing",
            ScenarioKind::Coplanar => "coplanar",
            ScenarioKind::Depolarising => "depolarising",
            ScenarioKind::DepolVsDephasing => "depol_vs_dephasing",
        }
    }

    /// Whether the closed forms need `gamma1 != gamma2`.
    pub fn requires_distinct_rates(&self) -> bool {
        matches!(
            self,
            ScenarioKind::SameAxisDephasing | ScenarioKind::Coplanar | ScenarioKind::Depolarising
        )
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScenarioKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown scenario '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScenarioSpec {
    pub kind: ScenarioKind,
    pub gamma1: f64,
    pub gamma2: f64,
}

impl ScenarioSpec {
    pub fn new(kind: ScenarioKind, gamma1: f64, gamma2: f64) -> Result<Self> {
        for (index, value) in [gamma1, gamma2].into_iter().enumerate() {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidRate { index, value });
            }
        }
        Ok(Self {
            kind,
            gamma1,
            gamma2,
        })
    }

    /// Full decay-rate vectors of the two processes.
    pub fn rates(&self) -> (DecayRates, DecayRates) {
        let (g1, g2) = (self.gamma1, self.gamma2);
        let pair = match self.kind {
            ScenarioKind::SameAxisDephasing => {
                (DecayRates::dephasing_z(g1), DecayRates::dephasing_z(g2))
            }
            ScenarioKind::OrthogonalDephasing => {
                (DecayRates::dephasing_z(g1), DecayRates::dephasing_x(g2))
            }
            ScenarioKind::Coplanar => (DecayRates::coplanar(g1), DecayRates::coplanar(g2)),
            ScenarioKind::Depolarising => {
                (DecayRates::depolarising(g1), DecayRates::depolarising(g2))
            }
            ScenarioKind::DepolVsDephasing => {
                (DecayRates::depolarising(g1), DecayRates::dephasing_z(g2))
            }
        };
        (
            pair.0.expect("positive rates"),
            pair.1.expect("positive rates"),
        )
    }

    /// Closed-form `(p_no_ent(t), p_ent(t))` for equal priors.
    pub fn error_curves_at(&self, t: f64) -> (f64, f64) {
        let (g1, g2) = (self.gamma1, self.gamma2);
        let e = |rate: f64| (-rate * t).exp();
        match self.kind {
            ScenarioKind::SameAxisDephasing => {
                let p = 0.5 - 0.25 * (e(2.0 * g1) - e(2.0 * g2)).abs();
                (p, p)
            }
            ScenarioKind::OrthogonalDephasing => {
                let p = 0.25 * (1.0 + e(2.0 * g1.max(g2)));
                (p, p)
            }
            ScenarioKind::Coplanar => {
                let a = (e(2.0 * g1) - e(2.0 * g2)).abs();
                let b = (e(4.0 * g1) - e(4.0 * g2)).abs();
                (0.5 - 0.25 * a.max(b), 0.5 - 0.25 * a - 0.125 * b)
            }
            ScenarioKind::Depolarising => {
                let d = (e(4.0 * g1) - e(4.0 * g2)).abs();
                (0.5 - 0.25 * d, 0.5 - 0.375 * d)
            }
            ScenarioKind::DepolVsDephasing => {
                let u = e(4.0 * g1);
                let v = e(2.0 * g2);
                let no_ent = 0.5 - 0.25 * (1.0 - u).max((u - v).abs());
                let ent = 0.5
                    - 0.125 * (1.0 - u)
                    - 0.0625 * (1.0 - 3.0 * u + 2.0 * v).abs()
                    - 0.0625 * (1.0 + u - 2.0 * v).abs();
                (no_ent, ent)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioSolution {
    pub spec: ScenarioSpec,
    /// One entry, or two for the coplanar pair (earliest first).
    pub t_star_no_ent: Vec<OptimalTime>,
    pub p_star_no_ent: f64,
    pub t_star_ent: OptimalTime,
    pub p_star_ent: f64,
    pub advantage_regime: bool,
}

/// `(g1/g2)^(g1/(g2-g1)) * |g1/g2 - 1|`, the peak of `|exp(-g1 s) - exp(-g2 s)|`.
fn peak_separation(g1: f64, g2: f64) -> f64 {
    let ratio = g1 / g2;
    ratio.powf(g1 / (g2 - g1)) * (ratio - 1.0).abs()
}

fn require_distinct(kind: ScenarioKind, g1: f64, g2: f64) -> Result<()> {
    if g1 == g2 {
        return Err(Error::Degenerate(format!(
            "{kind} needs distinct rates, got {g1} twice"
        )));
    }
    Ok(())
}

pub fn solve_same_axis_dephasing(g1: f64, g2: f64) -> Result<ScenarioSolution> {
    let spec = ScenarioSpec::new(ScenarioKind::SameAxisDephasing, g1, g2)?;
    require_distinct(spec.kind, g1, g2)?;
    let t = OptimalTime::Finite((g1 / g2).ln() / (2.0 * (g1 - g2)));
    let p = 0.5 - 0.25 * peak_separation(g1, g2);
    Ok(ScenarioSolution {
        spec,
        t_star_no_ent: vec![t],
        p_star_no_ent: p,
        t_star_ent: t,
        p_star_ent: p,
        advantage_regime: false,
    })
}

pub fn solve_orthogonal_dephasing(g1: f64, g2: f64) -> Result<ScenarioSolution> {
    let spec = ScenarioSpec::new(ScenarioKind::OrthogonalDephasing, g1, g2)?;
    Ok(ScenarioSolution {
        spec,
        t_star_no_ent: vec![OptimalTime::AtInfinity],
        p_star_no_ent: 0.25,
        t_star_ent: OptimalTime::AtInfinity,
        p_star_ent: 0.25,
        advantage_regime: false,
    })
}

/// Bisection for a sign change of `f` on `[lo, hi]`; returns the midpoint of
/// the final bracket, the bracket, and the iteration count.
pub fn bisect(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> Result<(f64, (f64, f64), usize)> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok((lo, (lo, lo), 0));
    }
    if f_hi == 0.0 {
        return Ok((hi, (hi, hi), 0));
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Numeric(format!("no sign change on [{lo}, {hi}]")));
    }
    let mut iterations = 0;
    while hi - lo > tol && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        iterations += 1;
        if f_mid == 0.0 {
            return Ok((mid, (mid, mid), iterations));
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi), (lo, hi), iterations))
}

/// Root of `g1 (e^{-4 g1 t} + e^{-2 g1 t}) = g2 (e^{-4 g2 t} + e^{-2 g2 t})`,
/// where the entangled coplanar error is stationary.
pub fn coplanar_entangled_time(g1: f64, g2: f64) -> Result<f64> {
    let side = |g: f64, t: f64| g * ((-4.0 * g * t).exp() + (-2.0 * g * t).exp());
    let h = |t: f64| side(g1, t) - side(g2, t);
    let slow = g1.min(g2);
    let fast = g1.max(g2);
    let mut lo = 1e-6 / fast;
    let sign0 = h(lo).signum();
    let mut hi = lo;
    // coarse geometric scan; the slower rate dominates well before 60/slow
    loop {
        let next = hi * 1.25;
        if next > 60.0 / slow {
            return Err(Error::Numeric(
                "coplanar stationarity condition has no root".into(),
            ));
        }
        if h(next).signum() != sign0 {
            lo = hi;
            hi = next;
            break;
        }
        hi = next;
    }
    Ok(bisect(h, lo, hi, COPLANAR_ROOT_TOL)?.0)
}

pub fn solve_coplanar(g1: f64, g2: f64) -> Result<ScenarioSolution> {
    let spec = ScenarioSpec::new(ScenarioKind::Coplanar, g1, g2)?;
    require_distinct(spec.kind, g1, g2)?;
    let base = (g1 / g2).ln() / (g1 - g2);
    let t_star_no_ent = vec![
        OptimalTime::Finite(0.25 * base),
        OptimalTime::Finite(0.5 * base),
    ];
    let t_ent = coplanar_entangled_time(g1, g2)?;
    Ok(ScenarioSolution {
        spec,
        t_star_no_ent,
        p_star_no_ent: 0.5 - 0.25 * peak_separation(g1, g2),
        t_star_ent: OptimalTime::Finite(t_ent),
        p_star_ent: spec.error_curves_at(t_ent).1,
        advantage_regime: true,
    })
}

pub fn solve_depolarising(g1: f64, g2: f64) -> Result<ScenarioSolution> {
    let spec = ScenarioSpec::new(ScenarioKind::Depolarising, g1, g2)?;
    require_distinct(spec.kind, g1, g2)?;
    let t = OptimalTime::Finite((g1 / g2).ln() / (4.0 * (g1 - g2)));
    let peak = peak_separation(g1, g2);
    Ok(ScenarioSolution {
        spec,
        t_star_no_ent: vec![t],
        p_star_no_ent: 0.5 - 0.25 * peak,
        t_star_ent: t,
        p_star_ent: 0.5 - 0.375 * peak,
        advantage_regime: true,
    })
}

/// Candidate entangled optimum `(t*, p*)` for depolarising versus dephasing,
/// from minimising `(3 + 3e^{-4 g1 t} - 2e^{-2 g2 t}) / 8`. `None` when that
/// expression has no interior minimum (`g2 >= 2 g1`).
pub fn depol_vs_dephasing_candidate(g1: f64, g2: f64) -> Option<(f64, f64)> {
    if g2 >= 2.0 * g1 {
        return None;
    }
    let t = (3.0 * g1 / g2).ln() / (4.0 * g1 - 2.0 * g2);
    let p =
        0.375 * (1.0 - (3.0 * g1 / g2).powf(2.0 * g1 / (g2 - 2.0 * g1)) * (2.0 * g1 / g2 - 1.0));
    Some((t, p))
}

pub fn solve_depol_vs_dephasing(g1: f64, g2: f64) -> Result<ScenarioSolution> {
    let spec = ScenarioSpec::new(ScenarioKind::DepolVsDephasing, g1, g2)?;
    let (t_star_ent, p_star_ent, advantage_regime) = match depol_vs_dephasing_candidate(g1, g2) {
        Some((t, p)) if p < 0.25 => (OptimalTime::Finite(t), p, true),
        _ => (OptimalTime::AtInfinity, 0.25, false),
    };
    Ok(ScenarioSolution {
        spec,
        t_star_no_ent: vec![OptimalTime::AtInfinity],
        p_star_no_ent: 0.25,
        t_star_ent,
        p_star_ent,
        advantage_regime,
    })
}

pub fn solve(kind: ScenarioKind, g1: f64, g2: f64) -> Result<ScenarioSolution> {
    match kind {
        ScenarioKind::SameAxisDephasing => solve_same_axis_dephasing(g1, g2),
        ScenarioKind::OrthogonalDephasing => solve_orthogonal_dephasing(g1, g2),
        ScenarioKind::Coplanar => solve_coplanar(g1, g2),
        ScenarioKind::Depolarising => solve_depolarising(g1, g2),
        ScenarioKind::DepolVsDephasing => solve_depol_vs_dephasing(g1, g2),
    }
}

/// Whether an entangled strategy with depolarising rate 1 and dephasing rate
/// `ratio` beats 1/4 at some finite time, decided by the numeric optimiser.
pub fn advantage_at_ratio(ratio: f64) -> Result<bool> {
    let depol = DecayRates::depolarising(1.0)?;
    let deph = DecayRates::dephasing_z(ratio)?;
    let config = MinimizeConfig {
        refine_tol: THRESHOLD_REFINE_TOL,
        ..MinimizeConfig::default()
    };
    let res = minimize_error(
        &depol,
        &deph,
        &Priors::equal(),
        StrategyMode::Entangled,
        &config,
    )?;
    Ok(res.t_star.finite().is_some() && res.p_star < 0.25)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdStep {
    pub ratio: f64,
    pub advantage: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdSearch {
    /// Midpoint of the final bracket.
    pub ratio: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
    pub tol: f64,
    pub trace: Vec<ThresholdStep>,
}

/// Bisects on `g2 / g1` in `(0, 1)` for the largest dephasing/depolarising
/// rate ratio at which entanglement still gives a finite-time advantage.
pub fn find_advantage_threshold(tol: f64) -> Result<ThresholdSearch> {
    if !(tol >= 1e-6) || !tol.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "tol must be at least 1e-6, got {tol}"
        )));
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    let mut trace = Vec::new();
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let advantage = advantage_at_ratio(mid)?;
        trace.push(ThresholdStep {
            ratio: mid,
            advantage,
        });
        if advantage {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ThresholdSearch {
        ratio: 0.5 * (lo + hi),
        bracket: (lo, hi),
        iterations: trace.len(),
        tol,
        trace,
    })
}
