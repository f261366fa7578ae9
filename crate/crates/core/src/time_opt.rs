//! Optimisation of the discrimination time.
//!
//! The error probabilities are finite sums of exponentials passed through
//! absolute values, so they may have kinks and several local minima. The
//! optimiser scans a geometric grid, refines every bracketed minimum with a
//! golden-section search, and compares the best finite value with the exact
//! stationary limit.
//!
//! Value comparisons cannot locate a smooth minimum closer than about
//! `sqrt(eps)` relative, so each golden-section result is then sharpened by
//! bisecting on the sign of the exact right derivative. Bisection on a sign
//! change stays robust at kinks.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::discrimination::{error_prob_ent, error_prob_no_ent, r_vector, Priors};
use crate::error::{Error, Result};
use crate::pauli_dynamics::{
    channel_probabilities, hadamard4, stationary_probabilities, DecayRates,
};

/// Minima whose values differ by less than this are reported together.
pub const TIE_TOL: f64 = 1e-10;

/// Half-width, relative to `1 + t`, of the window searched around a
/// golden-section result for a slope sign change.
const POLISH_WIDTH: f64 = 1e-6;

/// Rounding slack allowed when accepting a sharpened minimiser.
const POLISH_SLACK: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyMode {
    Separable,
    Entangled,
}

impl StrategyMode {
    pub const ALL: [StrategyMode; 2] = [StrategyMode::Separable, StrategyMode::Entangled];
}

impl fmt::Display for StrategyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrategyMode::Separable => "separable",
            StrategyMode::Entangled => "entangled",
        })
    }
}

impl FromStr for StrategyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "separable" => Ok(StrategyMode::Separable),
            "entangled" => Ok(StrategyMode::Entangled),
            other => Err(Error::InvalidParameter(format!("unknown mode '{other}'"))),
        }
    }
}

/// Where the infimum over `t > 0` is reached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OptimalTime {
    Finite(f64),
    /// Only approached as `t -> infinity`.
    AtInfinity,
    /// The two processes never differ.
    Undefined,
}

impl OptimalTime {
    pub fn finite(&self) -> Option<f64> {
        match self {
            OptimalTime::Finite(t) => Some(*t),
            _ => None,
        }
    }

    pub fn is_at_infinity(&self) -> bool {
        matches!(self, OptimalTime::AtInfinity)
    }
}

/// Finite times serialise as numbers, the limit as `"infinity"`, and the
/// degenerate case as `null`.
impl Serialize for OptimalTime {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            OptimalTime::Finite(t) => serializer.serialize_f64(*t),
            OptimalTime::AtInfinity => serializer.serialize_str("infinity"),
            OptimalTime::Undefined => serializer.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocalMinimum {
    pub t: f64,
    pub p: f64,
    pub bracket: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub t_star: OptimalTime,
    pub p_star: f64,
    pub mode: StrategyMode,
    pub method: Method,
    /// Bracket of the reported finite minimiser.
    pub bracket: Option<(f64, f64)>,
    /// Global minimisers tied with `p_star` within [`TIE_TOL`], by time.
    pub minima: Vec<LocalMinimum>,
    /// Every refined local minimum, sorted by value.
    pub local_minima: Vec<LocalMinimum>,
    /// Exact `t -> infinity` error.
    pub stationary_p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizeConfig {
    /// Horizon in units of the slowest decay time.
    pub t_max_factor: f64,
    pub grid_points: usize,
    pub refine_tol: f64,
}

impl Default for MinimizeConfig {
    fn default() -> Self {
        Self {
            t_max_factor: 30.0,
            grid_points: 2000,
            refine_tol: 1e-10,
        }
    }
}

/// Error probabilities with and without an ancilla on a time grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorCurve {
    pub times: Vec<f64>,
    pub p_no_ent: Vec<f64>,
    pub p_ent: Vec<f64>,
}

fn error_from_rates(
    rates1: &DecayRates,
    rates2: &DecayRates,
    priors: &Priors,
    t: f64,
    mode: StrategyMode,
) -> f64 {
    let p1 = channel_probabilities(rates1, t).expect("time validated by caller");
    let p2 = channel_probabilities(rates2, t).expect("time validated by caller");
    let r = r_vector(priors, &p1, &p2);
    match mode {
        StrategyMode::Separable => error_prob_no_ent(&r).0,
        StrategyMode::Entangled => error_prob_ent(&r),
    }
}

/// Time derivative of the channel probabilities.
fn probability_rates(rates: &DecayRates, t: f64) -> [f64; 4] {
    let h = hadamard4();
    let da = rates
        .exponent_rates()
        .map(|s| if s == 0.0 { 0.0 } else { -s * (-s * t).exp() });
    std::array::from_fn(|k| 0.25 * (0..4).map(|l| f64::from(h[k][l]) * da[l]).sum::<f64>())
}

/// Right derivative of `|x|` along a direction with slope `dx`.
fn abs_right_slope(x: f64, dx: f64) -> f64 {
    if x == 0.0 {
        dx.abs()
    } else {
        x.signum() * dx
    }
}

/// Right derivative in `t` of the error probability.
fn error_slope(
    rates1: &DecayRates,
    rates2: &DecayRates,
    priors: &Priors,
    t: f64,
    mode: StrategyMode,
) -> f64 {
    let p1 = channel_probabilities(rates1, t).expect("time validated by caller");
    let p2 = channel_probabilities(rates2, t).expect("time validated by caller");
    let r = r_vector(priors, &p1, &p2).components();
    let (d1, d2) = (probability_rates(rates1, t), probability_rates(rates2, t));
    let dr: [f64; 4] = std::array::from_fn(|k| priors.q1() * d1[k] - priors.q2() * d2[k]);
    match mode {
        StrategyMode::Entangled => -0.5 * (0..4).map(|k| abs_right_slope(r[k], dr[k])).sum::<f64>(),
        StrategyMode::Separable => {
            // same pairings and summation order as the closed form
            let axes = [[(0, 3), (1, 2)], [(0, 1), (2, 3)], [(0, 2), (1, 3)]];
            let terms = axes.map(|pairs| {
                pairs.iter().fold((0.0, 0.0), |(v, dv), &(a, b)| {
                    (
                        v + (r[a] + r[b]).abs(),
                        dv + abs_right_slope(r[a] + r[b], dr[a] + dr[b]),
                    )
                })
            });
            let top = terms.iter().map(|x| x.0).fold(f64::NEG_INFINITY, f64::max);
            let slope = terms
                .iter()
                .filter(|x| x.0 == top)
                .map(|x| x.1)
                .fold(f64::NEG_INFINITY, f64::max);
            -0.5 * slope
        }
    }
}

/// Bisects on the sign of `slope` within `[lo, hi]`, given a negative slope
/// at `lo` and a nonnegative one at `hi`; `None` otherwise.
fn slope_root(slope: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Option<f64> {
    if !(slope(lo) < 0.0 && slope(hi) >= 0.0) {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if slope(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(hi)
}

/// Minimum error probability for discriminating at time `t`.
pub fn error_at(
    rates1: &DecayRates,
    rates2: &DecayRates,
    priors: &Priors,
    t: f64,
    mode: StrategyMode,
) -> Result<f64> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidTime(t));
    }
    Ok(error_from_rates(rates1, rates2, priors, t, mode))
}

/// Exact error probability in the stationary limit.
pub fn stationary_error(
    rates1: &DecayRates,
    rates2: &DecayRates,
    priors: &Priors,
    mode: StrategyMode,
) -> f64 {
    let r = r_vector(
        priors,
        &stationary_probabilities(rates1),
        &stationary_probabilities(rates2),
    );
    match mode {
        StrategyMode::Separable => error_prob_no_ent(&r).0,
        StrategyMode::Entangled => error_prob_ent(&r),
    }
}

pub fn curve(
    rates1: &DecayRates,
    rates2: &DecayRates,
    priors: &Priors,
    t_grid: &[f64],
) -> Result<ErrorCurve> {
    let valid =
        t_grid.iter().all(|t| t.is_finite() && *t >= 0.0) && t_grid.windows(2).all(|w| w[1] > w[0]);
    if t_grid.is_empty() || !valid {
        return Err(Error::InvalidGrid);
    }
    let eval = |mode| {
        t_grid
            .iter()
            .map(|&t| error_from_rates(rates1, rates2, priors, t, mode))
            .collect()
    };
    Ok(ErrorCurve {
        times: t_grid.to_vec(),
        p_no_ent: eval(StrategyMode::Separable),
        p_ent: eval(StrategyMode::Entangled),
    })
}

/// `n` log-spaced points from `t_min` to `t_max` inclusive.
pub fn geometric_grid(t_min: f64, t_max: f64, n: usize) -> Result<Vec<f64>> {
    if !(t_min > 0.0) || !(t_max > t_min) || !t_max.is_finite() || n < 2 {
        return Err(Error::InvalidGrid);
    }
    let ratio = (t_max / t_min).ln();
    let mut grid: Vec<f64> = (0..n)
        .map(|i| t_min * (ratio * i as f64 / (n - 1) as f64).exp())
        .collect();
    grid[n - 1] = t_max;
    Ok(grid)
}

/// `n` evenly spaced points from `t_min` to `t_max` inclusive.
pub fn linear_grid(t_min: f64, t_max: f64, n: usize) -> Result<Vec<f64>> {
    if !(t_min >= 0.0) || !(t_max > t_min) || !t_max.is_finite() || n < 2 {
        return Err(Error::InvalidGrid);
    }
    let step = (t_max - t_min) / (n - 1) as f64;
    let mut grid: Vec<f64> = (0..n).map(|i| t_min + step * i as f64).collect();
    grid[n - 1] = t_max;
    Ok(grid)
}

/// Golden-section search for a minimum of `f` on `[a, b]`, stopping once
/// the bracket is narrower than `tol * (1 + |x|)`. Returns `(x, f(x))`.
pub fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..500 {
        if b - a <= tol * (1.0 + 0.5 * (a + b).abs()) {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Indices `i` of grid values that are discrete local minima: strictly
/// below the left neighbour and not above the right one.
fn grid_minima(values: &[f64]) -> Vec<usize> {
    (1..values.len().saturating_sub(1))
        .filter(|&i| values[i] < values[i - 1] && values[i] <= values[i + 1])
        .collect()
}

/// Minimises the error probability over `t > 0`.
///
/// Finite minimisers are reported when one beats the stationary limit by
/// more than `refine_tol`; otherwise the infimum is reported at infinity.
pub fn minimize_error(
    rates1: &DecayRates,
    rates2: &DecayRates,
    priors: &Priors,
    mode: StrategyMode,
    config: &MinimizeConfig,
) -> Result<OptimizationResult> {
    if !(config.t_max_factor > 0.0) || config.grid_points < 3 || !(config.refine_tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "bad optimiser config {config:?}"
        )));
    }
    let stationary_p = stationary_error(rates1, rates2, priors, mode);

    let rate_sums = rates1
        .exponent_rates()
        .into_iter()
        .chain(rates2.exponent_rates());
    let positive: Vec<f64> = rate_sums.filter(|&s| s > 0.0).collect();
    if positive.is_empty() || rates1 == rates2 {
        return Ok(OptimizationResult {
            t_star: OptimalTime::Undefined,
            p_star: error_from_rates(rates1, rates2, priors, 0.0, mode),
            mode,
            method: Method::Numeric,
            bracket: None,
            minima: Vec::new(),
            local_minima: Vec::new(),
            stationary_p,
        });
    }
    let s_min = positive.iter().copied().fold(f64::INFINITY, f64::min);
    let s_max = positive.iter().copied().fold(0.0, f64::max);
    let grid = geometric_grid(
        1e-3 / s_max,
        config.t_max_factor / s_min,
        config.grid_points,
    )?;

    let f = |t: f64| error_from_rates(rates1, rates2, priors, t, mode);
    let values: Vec<f64> = grid.iter().map(|&t| f(t)).collect();

    let mut local_minima: Vec<LocalMinimum> = grid_minima(&values)
        .into_iter()
        .map(|i| {
            let bracket = (grid[i - 1], grid[i + 1]);
            let (mut t, mut p) = golden_section(f, bracket.0, bracket.1, config.refine_tol);
            if p > values[i] {
                (t, p) = (grid[i], values[i]);
            }
            let width = POLISH_WIDTH * (1.0 + t);
            let polished = slope_root(
                |x| error_slope(rates1, rates2, priors, x, mode),
                (t - width).max(bracket.0),
                (t + width).min(bracket.1),
            );
            if let Some(tp) = polished {
                let fp = f(tp);
                if fp <= p + POLISH_SLACK {
                    (t, p) = (tp, fp.min(p));
                }
            }
            LocalMinimum { t, p, bracket }
        })
        .collect();
    local_minima.sort_by(|a, b| a.p.total_cmp(&b.p).then(a.t.total_cmp(&b.t)));

    let best = local_minima.first().copied();
    match best {
        Some(best) if best.p < stationary_p - config.refine_tol => {
            let mut minima: Vec<LocalMinimum> = local_minima
                .iter()
                .copied()
                .filter(|m| m.p - best.p <= TIE_TOL)
                .collect();
            minima.sort_by(|a, b| a.t.total_cmp(&b.t));
            Ok(OptimizationResult {
                t_star: OptimalTime::Finite(best.t),
                p_star: best.p,
                mode,
                method: Method::Numeric,
                bracket: Some(best.bracket),
                minima,
                local_minima,
                stationary_p,
            })
        }
        _ => Ok(OptimizationResult {
            t_star: OptimalTime::AtInfinity,
            p_star: stationary_p,
            mode,
            method: Method::Numeric,
            bracket: None,
            minima: Vec::new(),
            local_minima,
            stationary_p,
        }),
    }
}
