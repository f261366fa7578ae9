//! Command-line front end.
//!
//! Every subcommand reads the same flag set, optionally seeded from a flat
//! `key=value` file given with `--config`; flags override the file. Exit
//! codes: 0 on success, 1 on numeric or verification failure, 2 on usage
//! errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::discrimination::{
    bell_input_error, brute_force_no_ent, entanglement_advantage, error_prob_ent,
    error_prob_no_ent, r_vector, sampled_ent_minimum, Priors,
};
use crate::error::Error;
use crate::pauli_dynamics::{channel_probabilities, stationary_probabilities, DecayRates};
use crate::sampling;
use crate::scenarios::{self, ScenarioKind, ScenarioSolution};
use crate::time_opt::{
    curve, geometric_grid, linear_grid, minimize_error, ErrorCurve, MinimizeConfig, OptimalTime,
    OptimizationResult, StrategyMode,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failure(_) => EXIT_FAILURE,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidRate { .. }
            | Error::InvalidTime(_)
            | Error::InvalidPrior(_)
            | Error::InvalidGrid
            | Error::InvalidParameter(_)
            | Error::Degenerate(_)
            | Error::UnsupportedDimension(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "pauli-discrim",
    version,
    about = "Optimal single-shot discrimination of two Pauli dynamical maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Error probabilities with and without entanglement on a time grid
    Curve(Flags),
    /// Optimal discrimination time and error for each strategy
    Optimize(Flags),
    /// Closed-form solution of a named case study, with a numeric cross-check
    Scenario {
        /// same_axis_dephasing | orthogonal_dephasing | coplanar | depolarising | depol_vs_dephasing
        kind: String,
        gamma1: f64,
        gamma2: f64,
        #[command(flatten)]
        flags: Flags,
    },
    /// Rate ratio below which entanglement beats the stationary limit
    Threshold(Flags),
    /// Check closed forms against brute-force oracles
    Verify(Flags),
}

#[derive(Args, Debug, Default)]
struct Flags {
    /// Decay rates of the first process, `a,b,c`
    #[arg(long)]
    rates1: Option<String>,
    /// Decay rates of the second process, `a,b,c`
    #[arg(long)]
    rates2: Option<String>,
    /// Prior probability of the first process
    #[arg(long)]
    q1: Option<String>,
    /// separable | entangled | both
    #[arg(long)]
    mode: Option<String>,
    #[arg(long = "t-min")]
    t_min: Option<String>,
    #[arg(long = "t-max")]
    t_max: Option<String>,
    /// Grid size (curve points, or optimiser scan points)
    #[arg(long)]
    points: Option<String>,
    /// geometric | linear
    #[arg(long)]
    spacing: Option<String>,
    /// csv | json
    #[arg(long)]
    format: Option<String>,
    /// Output file (default stdout)
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Tolerance: threshold bracket width, optimiser refinement, or verify override
    #[arg(long)]
    tol: Option<String>,
    /// Fibonacci grid size for `verify`
    #[arg(long)]
    grid: Option<String>,
    /// Random two-qubit inputs per instance for `verify`
    #[arg(long)]
    samples: Option<String>,
    /// Random channel pairs for `verify`
    #[arg(long)]
    pairs: Option<String>,
    /// Emit a gnuplot script with the data inlined (curve only)
    #[arg(long)]
    gnuplot: bool,
    /// Flat key=value file supplying defaults for the flags above
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Flags {
    fn to_pairs(&self) -> BTreeMap<String, String> {
        let entries = [
            ("rates1", &self.rates1),
            ("rates2", &self.rates2),
            ("q1", &self.q1),
            ("mode", &self.mode),
            ("t-min", &self.t_min),
            ("t-max", &self.t_max),
            ("points", &self.points),
            ("spacing", &self.spacing),
            ("format", &self.format),
            ("out", &self.out),
            ("seed", &self.seed),
            ("tol", &self.tol),
            ("grid", &self.grid),
            ("samples", &self.samples),
            ("pairs", &self.pairs),
        ];
        let mut map: BTreeMap<String, String> = entries
            .into_iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone())))
            .collect();
        if self.gnuplot {
            map.insert("gnuplot".into(), "true".into());
        }
        map
    }

    fn resolve(&self) -> CliResult<RunConfig> {
        let mut pairs = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
                parse_config_file(&text)?
            }
            None => BTreeMap::new(),
        };
        pairs.extend(self.to_pairs());
        RunConfig::from_pairs(&pairs)
    }
}

const KNOWN_KEYS: [&str; 16] = [
    "rates1", "rates2", "q1", "mode", "t-min", "t-max", "points", "spacing", "format", "out",
    "seed", "tol", "grid", "samples", "pairs", "gnuplot",
];

/// Parses a flat `key=value` file. Blank lines and `#` comments are
/// skipped; underscores in keys are read as dashes.
pub fn parse_config_file(text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("config line {}: expected key=value", lineno + 1))
        })?;
        let key = key.trim().replace('_', "-");
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!(
                "config line {}: unknown key '{key}'",
                lineno + 1
            )));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeSelection {
    Separable,
    Entangled,
    Both,
}

impl ModeSelection {
    pub fn modes(&self) -> Vec<StrategyMode> {
        match self {
            ModeSelection::Separable => vec![StrategyMode::Separable],
            ModeSelection::Entangled => vec![StrategyMode::Entangled],
            ModeSelection::Both => StrategyMode::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Geometric,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub rates1: Option<DecayRates>,
    pub rates2: Option<DecayRates>,
    pub priors: Priors,
    pub mode: ModeSelection,
    pub t_min: f64,
    pub t_max: f64,
    /// `None` lets each subcommand pick its own default.
    pub n_points: Option<usize>,
    pub spacing: Spacing,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub tol: Option<f64>,
    pub n_grid: usize,
    pub n_samples: usize,
    pub n_pairs: usize,
    pub gnuplot: bool,
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> CliResult<T> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("--{key}: cannot parse '{value}'")))
}

pub fn parse_rates(value: &str) -> CliResult<DecayRates> {
    let parts: Vec<&str> = value.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "rates need three comma-separated values, got '{value}'"
        )));
    }
    let mut gamma = [0.0; 3];
    for (g, p) in gamma.iter_mut().zip(parts) {
        *g = parse_num("rates", p)?;
    }
    Ok(DecayRates::new(gamma)?)
}

impl RunConfig {
    pub fn from_pairs(pairs: &BTreeMap<String, String>) -> CliResult<Self> {
        let get = |k: &str| pairs.get(k).map(String::as_str);
        let rates = |k: &str| get(k).map(parse_rates).transpose();
        let q1: f64 = get("q1")
            .map(|v| parse_num("q1", v))
            .transpose()?
            .unwrap_or(0.5);
        let mode = match get("mode").unwrap_or("both") {
            "separable" => ModeSelection::Separable,
            "entangled" => ModeSelection::Entangled,
            "both" => ModeSelection::Both,
            other => return Err(CliError::Usage(format!("--mode: unknown value '{other}'"))),
        };
        let spacing = match get("spacing").unwrap_or("geometric") {
            "geometric" => Spacing::Geometric,
            "linear" => Spacing::Linear,
            other => {
                return Err(CliError::Usage(format!(
                    "--spacing: unknown value '{other}'"
                )))
            }
        };
        let format = match get("format") {
            None => None,
            Some("csv") => Some(OutputFormat::Csv),
            Some("json") => Some(OutputFormat::Json),
            Some(other) => {
                return Err(CliError::Usage(format!(
                    "--format: unknown value '{other}'"
                )))
            }
        };
        let gnuplot = match get("gnuplot") {
            None | Some("false") => false,
            Some("true") => true,
            Some(other) => {
                return Err(CliError::Usage(format!(
                    "gnuplot: expected true or false, got '{other}'"
                )))
            }
        };
        let config = Self {
            rates1: rates("rates1")?,
            rates2: rates("rates2")?,
            priors: Priors::new(q1)?,
            mode,
            t_min: get("t-min")
                .map(|v| parse_num("t-min", v))
                .transpose()?
                .unwrap_or(1e-3),
            t_max: get("t-max")
                .map(|v| parse_num("t-max", v))
                .transpose()?
                .unwrap_or(5.0),
            n_points: get("points").map(|v| parse_num("points", v)).transpose()?,
            spacing,
            format,
            out: get("out").map(PathBuf::from),
            seed: get("seed")
                .map(|v| parse_num("seed", v))
                .transpose()?
                .unwrap_or(2025),
            tol: get("tol").map(|v| parse_num("tol", v)).transpose()?,
            n_grid: get("grid")
                .map(|v| parse_num("grid", v))
                .transpose()?
                .unwrap_or(10_000),
            n_samples: get("samples")
                .map(|v| parse_num("samples", v))
                .transpose()?
                .unwrap_or(1000),
            n_pairs: get("pairs")
                .map(|v| parse_num("pairs", v))
                .transpose()?
                .unwrap_or(100),
            gnuplot,
        };
        if !(config.t_min > 0.0) || !(config.t_max > config.t_min) || !config.t_max.is_finite() {
            return Err(CliError::Usage(format!(
                "need 0 < t-min < t-max, got t-min={} t-max={}",
                config.t_min, config.t_max
            )));
        }
        if config.n_points.is_some_and(|n| n < 2) {
            return Err(CliError::Usage("--points must be at least 2".into()));
        }
        if config.tol.is_some_and(|t| !(t >= 0.0)) {
            return Err(CliError::Usage("--tol must be nonnegative".into()));
        }
        Ok(config)
    }

    fn require_rates(&self) -> CliResult<(DecayRates, DecayRates)> {
        match (self.rates1, self.rates2) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(CliError::Usage("--rates1 and --rates2 are required".into())),
        }
    }

    fn json_only(&self, command: &str) -> CliResult<()> {
        if self.format == Some(OutputFormat::Csv) {
            return Err(CliError::Usage(format!(
                "{command} only supports --format json"
            )));
        }
        Ok(())
    }

    fn config_json(&self) -> serde_json::Value {
        json!({
            "rates1": self.rates1.map(|r| r.gamma()),
            "rates2": self.rates2.map(|r| r.gamma()),
            "q1": self.priors.q1(),
            "t_min": self.t_min,
            "t_max": self.t_max,
            "points": self.n_points,
            "spacing": self.spacing,
        })
    }
}

/// Float formatting with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn curve_csv(c: &ErrorCurve) -> String {
    let mut s = String::from("t,p_no_ent,p_ent\n");
    for i in 0..c.times.len() {
        let _ = writeln!(
            s,
            "{},{},{}",
            fmt_f64(c.times[i]),
            fmt_f64(c.p_no_ent[i]),
            fmt_f64(c.p_ent[i])
        );
    }
    s
}

fn gnuplot_script(c: &ErrorCurve, config: &RunConfig) -> String {
    let mut s = String::from("$data << EOD\n");
    for i in 0..c.times.len() {
        let _ = writeln!(
            s,
            "{} {} {}",
            fmt_f64(c.times[i]),
            fmt_f64(c.p_no_ent[i]),
            fmt_f64(c.p_ent[i])
        );
    }
    s.push_str("EOD\n");
    s.push_str("set xlabel 't'\nset ylabel 'error probability'\n");
    if config.spacing == Spacing::Geometric {
        s.push_str("set logscale x\n");
    }
    s.push_str(
        "plot $data using 1:2 with lines dt 2 title 'separable', \\\n     $data using 1:3 with lines title 'entangled'\n",
    );
    s
}

fn cmd_curve(config: &RunConfig) -> CliResult<String> {
    let (rates1, rates2) = config.require_rates()?;
    let n = config.n_points.unwrap_or(200);
    let grid = match config.spacing {
        Spacing::Geometric => geometric_grid(config.t_min, config.t_max, n)?,
        Spacing::Linear => linear_grid(config.t_min, config.t_max, n)?,
    };
    let c = curve(&rates1, &rates2, &config.priors, &grid)?;
    if config.gnuplot {
        return Ok(gnuplot_script(&c, config));
    }
    Ok(match config.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Csv => curve_csv(&c),
        OutputFormat::Json => to_json(&json!({
            "times": c.times,
            "p_no_ent": c.p_no_ent,
            "p_ent": c.p_ent,
            "config": config.config_json(),
        }))?,
    })
}

fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s =
        serde_json::to_string_pretty(value).map_err(|e| CliError::Failure(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn optimizer_config(config: &RunConfig) -> MinimizeConfig {
    let defaults = MinimizeConfig::default();
    MinimizeConfig {
        grid_points: config.n_points.unwrap_or(defaults.grid_points),
        refine_tol: config.tol.unwrap_or(defaults.refine_tol),
        ..defaults
    }
}

fn cmd_optimize(config: &RunConfig) -> CliResult<String> {
    config.json_only("optimize")?;
    let (rates1, rates2) = config.require_rates()?;
    let opt = optimizer_config(config);
    let results = config
        .mode
        .modes()
        .into_iter()
        .map(|mode| minimize_error(&rates1, &rates2, &config.priors, mode, &opt))
        .collect::<crate::error::Result<Vec<OptimizationResult>>>()?;
    to_json(&json!({
        "rates1": rates1.gamma(),
        "rates2": rates2.gamma(),
        "q1": config.priors.q1(),
        "results": results,
    }))
}

/// Largest distance from a closed-form optimal time to the nearest numeric
/// minimiser; `None` when one side is finite and the other is not.
fn time_deviation(closed: &[OptimalTime], numeric: &OptimizationResult) -> Option<f64> {
    if closed.iter().all(OptimalTime::is_at_infinity) {
        return numeric.t_star.is_at_infinity().then_some(0.0);
    }
    if numeric.minima.is_empty() {
        return None;
    }
    closed
        .iter()
        .map(|t| {
            let t = t.finite()?;
            Some(
                numeric
                    .minima
                    .iter()
                    .map(|m| (m.t - t).abs())
                    .fold(f64::INFINITY, f64::min),
            )
        })
        .try_fold(0.0f64, |acc, d| d.map(|d| acc.max(d)))
}

#[derive(Serialize)]
struct ScenarioReport {
    solution: ScenarioSolution,
    numeric: BTreeMap<&'static str, OptimizationResult>,
    deviation: BTreeMap<&'static str, Option<f64>>,
}

fn cmd_scenario(kind: &str, g1: f64, g2: f64, config: &RunConfig) -> CliResult<String> {
    config.json_only("scenario")?;
    let kind: ScenarioKind = kind.parse()?;
    let solution = scenarios::solve(kind, g1, g2)?;
    let (rates1, rates2) = solution.spec.rates();
    let opt = optimizer_config(config);
    let sep = minimize_error(
        &rates1,
        &rates2,
        &Priors::equal(),
        StrategyMode::Separable,
        &opt,
    )?;
    let ent = minimize_error(
        &rates1,
        &rates2,
        &Priors::equal(),
        StrategyMode::Entangled,
        &opt,
    )?;
    let mut deviation = BTreeMap::new();
    deviation.insert(
        "p_no_ent",
        Some((sep.p_star - solution.p_star_no_ent).abs()),
    );
    deviation.insert("p_ent", Some((ent.p_star - solution.p_star_ent).abs()));
    deviation.insert("t_no_ent", time_deviation(&solution.t_star_no_ent, &sep));
    deviation.insert("t_ent", time_deviation(&[solution.t_star_ent], &ent));
    let mut numeric = BTreeMap::new();
    numeric.insert("separable", sep);
    numeric.insert("entangled", ent);
    to_json(&ScenarioReport {
        solution,
        numeric,
        deviation,
    })
}

fn cmd_threshold(config: &RunConfig) -> CliResult<String> {
    config.json_only("threshold")?;
    let search = scenarios::find_advantage_threshold(config.tol.unwrap_or(1e-5))?;
    to_json(&search)
}

/// One row of the `verify` report.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub deviation: f64,
    pub tol: f64,
    pub passed: bool,
}

impl CheckOutcome {
    fn new(name: &'static str, deviation: f64, tol: f64) -> Self {
        Self {
            name,
            deviation,
            tol,
            passed: deviation <= tol,
        }
    }
}

/// Runs the closed-form versus brute-force suites used by `verify`.
/// `tol_override` replaces every check's tolerance.
pub fn verification_checks(config: &RunConfig) -> CliResult<Vec<CheckOutcome>> {
    let tol = |default: f64| config.tol.unwrap_or(default);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let instances: Vec<_> = (0..config.n_pairs.max(1))
        .map(|_| {
            (
                sampling::random_prob_vector(&mut rng),
                sampling::random_prob_vector(&mut rng),
                sampling::random_priors(&mut rng),
            )
        })
        .collect();

    let mut gap_above = f64::NEG_INFINITY;
    let mut gap_below = f64::NEG_INFINITY;
    let mut bell_dev: f64 = 0.0;
    for (p1, p2, priors) in &instances {
        let r = r_vector(priors, p1, p2);
        let closed_sep = error_prob_no_ent(&r).0;
        let brute = brute_force_no_ent(p1, p2, priors, config.n_grid)?;
        gap_above = gap_above.max(brute - closed_sep);
        gap_below = gap_below.max(closed_sep - brute);
        bell_dev = bell_dev.max((bell_input_error(p1, p2, priors)? - error_prob_ent(&r)).abs());
    }

    let mut sampled_gap = f64::NEG_INFINITY;
    for (i, (p1, p2, priors)) in instances.iter().take(25).enumerate() {
        let closed = error_prob_ent(&r_vector(priors, p1, p2));
        let best = sampled_ent_minimum(
            p1,
            p2,
            priors,
            config.n_samples.max(1),
            config.seed.wrapping_add(i as u64),
        )?;
        sampled_gap = sampled_gap.max(closed - best);
    }

    let margin = tol(1e-14);
    let seeds: Vec<u64> = (0..100u64)
        .map(|i| config.seed.wrapping_mul(1000).wrapping_add(i))
        .collect();
    let mismatches: usize = seeds
        .par_iter()
        .map(|&s| {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            (0..1000)
                .filter(|_| {
                    let p1 = sampling::random_prob_vector(&mut rng);
                    let p2 = sampling::random_prob_vector(&mut rng);
                    let r = r_vector(&sampling::random_priors(&mut rng), &p1, &p2);
                    entanglement_advantage(&r)
                        != (error_prob_ent(&r) < error_prob_no_ent(&r).0 - margin)
                })
                .count()
        })
        .sum();

    let mut semigroup_dev: f64 = 0.0;
    let mut stationary_dev: f64 = 0.0;
    for _ in 0..10_000 {
        let rates = sampling::random_rates(&mut rng, 5.0);
        let s = 2.0 * rand::Rng::random::<f64>(&mut rng);
        let t = 2.0 * rand::Rng::random::<f64>(&mut rng);
        let composed =
            channel_probabilities(&rates, s)?.compose(&channel_probabilities(&rates, t)?);
        let direct = channel_probabilities(&rates, s + t)?;
        for (a, b) in composed.probabilities().iter().zip(direct.probabilities()) {
            semigroup_dev = semigroup_dev.max((a - b).abs());
        }
        let sums = rates.exponent_rates();
        if sums[1..].iter().all(|&x| x > 0.0) {
            let horizon = 50.0 / sums[1..].iter().copied().fold(f64::INFINITY, f64::min);
            let late = channel_probabilities(&rates, horizon)?;
            for (a, b) in late
                .probabilities()
                .iter()
                .zip(stationary_probabilities(&rates).probabilities())
            {
                stationary_dev = stationary_dev.max((a - b).abs());
            }
        }
    }

    Ok(vec![
        CheckOutcome::new("separable_brute_force_gap", gap_above, tol(2e-4)),
        CheckOutcome::new("separable_brute_force_not_below", gap_below, tol(1e-12)),
        CheckOutcome::new("bell_input_matches_closed_form", bell_dev, tol(1e-12)),
        CheckOutcome::new(
            "random_inputs_not_below_closed_form",
            sampled_gap,
            tol(1e-10),
        ),
        CheckOutcome {
            name: "advantage_criterion_mismatches",
            deviation: mismatches as f64,
            tol: margin,
            passed: mismatches == 0,
        },
        CheckOutcome::new("semigroup_composition", semigroup_dev, tol(1e-12)),
        CheckOutcome::new("stationary_limit", stationary_dev, tol(1e-10)),
    ])
}

fn cmd_verify(config: &RunConfig, stderr: &mut dyn Write) -> CliResult<(String, bool)> {
    let checks = verification_checks(config)?;
    let mut s = format!(
        "seed={} pairs={} grid={} samples={}\n{:<40} {:>6} {:>12} {:>10}\n",
        config.seed,
        config.n_pairs,
        config.n_grid,
        config.n_samples,
        "check",
        "status",
        "deviation",
        "tol"
    );
    for c in &checks {
        let _ = writeln!(
            s,
            "{:<40} {:>6} {:>12.3e} {:>10.1e}",
            c.name,
            if c.passed { "PASS" } else { "FAIL" },
            c.deviation,
            c.tol
        );
    }
    let failed = checks.iter().find(|c| !c.passed);
    if let Some(c) = failed {
        let _ = writeln!(stderr, "verification failed: {}", c.name);
    }
    Ok((s, failed.is_none()))
}

fn emit(text: &str, config: &RunConfig, stdout: &mut dyn Write) -> CliResult<()> {
    match &config.out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn dispatch(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<i32> {
    let (text, config, ok) = match &cli.command {
        Command::Curve(flags) => {
            let config = flags.resolve()?;
            (cmd_curve(&config)?, config, true)
        }
        Command::Optimize(flags) => {
            let config = flags.resolve()?;
            (cmd_optimize(&config)?, config, true)
        }
        Command::Scenario {
            kind,
            gamma1,
            gamma2,
            flags,
        } => {
            let config = flags.resolve()?;
            (cmd_scenario(kind, *gamma1, *gamma2, &config)?, config, true)
        }
        Command::Threshold(flags) => {
            let config = flags.resolve()?;
            (cmd_threshold(&config)?, config, true)
        }
        Command::Verify(flags) => {
            let config = flags.resolve()?;
            let (text, ok) = cmd_verify(&config, stderr)?;
            (text, config, ok)
        }
    };
    emit(&text, &config, stdout)?;
    Ok(if ok { EXIT_OK } else { EXIT_FAILURE })
}

/// Parses `args` (including the program name) and runs the subcommand,
/// returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
