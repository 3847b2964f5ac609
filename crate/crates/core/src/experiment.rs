//! Config-driven experiments: sweeps over K, the bad-link fraction θ, V or β,
//! with CSV output and bound reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{InterferenceModel, InterferenceSpec, LinkSet, Network};
use crate::optimizer::{
    average_age_lower_bound, compute_bounds, solve_known_peak, solve_unknown_peak, theorem2_bound, BoundReport,
    KnownPeakSolution, SolverSettings, UnknownPeakSolution,
};
use crate::policies::{
    AgeBasedPolicy, NeverSchedule, Policy, PriorityPolicy, SetMixture, StationaryPolicy, VirtualQueuePolicy,
};
use crate::simulator::{run_with_checkpoints, DiagnosticsReport, MetricsReport, Trajectory};

/// Link population: either explicit `weights`/`gamma` arrays or the
/// good/bad template (`links`, `gamma_good`, `gamma_bad`, `n_bad`, unit
/// weights, bad links last).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub links: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_good: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_bad: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_bad: Option<usize>,
}

impl NetworkSpec {
    fn is_template(&self) -> bool {
        self.gamma.is_none()
    }

    fn n_links(&self) -> Result<usize> {
        match (&self.gamma, self.links) {
            (Some(g), None) => Ok(g.len()),
            (Some(g), Some(n)) if g.len() == n => Ok(n),
            (Some(g), Some(n)) => Err(Error::Config(format!(
                "network.links = {n} but network.gamma has {} entries",
                g.len()
            ))),
            (None, Some(n)) => Ok(n),
            (None, None) => Err(Error::Config("network needs either `gamma` or `links` with the good/bad template".into())),
        }
    }

    /// Builds the network, with `n_bad_override` replacing the template's `n_bad`.
    pub fn build(&self, n_bad_override: Option<usize>) -> Result<Network> {
        let n = self.n_links()?;
        if let Some(gamma) = &self.gamma {
            if self.gamma_good.is_some() || self.gamma_bad.is_some() || self.n_bad.is_some() {
                return Err(Error::Config(
                    "network: give either `gamma` or the good/bad template fields, not both".into(),
                ));
            }
            let weights = self.weights.clone().unwrap_or_else(|| vec![1.0; n]);
            return Network::new(weights, gamma.clone());
        }
        let field = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| Error::Config(format!("network.{name} is required by the good/bad template")))
        };
        let good = field(self.gamma_good, "gamma_good")?;
        let bad = field(self.gamma_bad, "gamma_bad")?;
        let n_bad = match n_bad_override.or(self.n_bad) {
            Some(k) => k,
            None => return Err(Error::Config("network.n_bad is required by the good/bad template".into())),
        };
        if n_bad > n {
            return Err(Error::Config(format!("network.n_bad = {n_bad} exceeds network.links = {n}")));
        }
        let base = Network::good_bad(n, n_bad, good, bad)?;
        match &self.weights {
            Some(w) => Network::new(w.clone(), base.gamma().to_vec()),
            None => Ok(base),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixtureEntry {
    pub set: LinkSet,
    pub probability: f64,
}

/// A policy to simulate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PolicySpec {
    /// Virtual-queue max-weight policy with parameter `v`.
    VirtualQueue { v: f64 },
    /// Age-based max-weight policy with parameter `beta`.
    AgeBased { beta: f64 },
    /// Optimal channel-blind stationary policy, solved per sweep point.
    StationaryOptimal,
    /// Optimal S-only policy for the observed-channel problem (small N only).
    SOnlyOptimal,
    /// Fixed-priority greedy policy; identity order when omitted.
    Priority {
        #[serde(default)]
        order: Option<Vec<usize>>,
    },
    /// A fixed stationary mixture.
    Stationary { mixture: Vec<MixtureEntry> },
    Never,
}

impl PolicySpec {
    pub fn label(&self) -> &'static str {
        match self {
            PolicySpec::VirtualQueue { .. } => "pi_q",
            PolicySpec::AgeBased { .. } => "pi_a",
            PolicySpec::StationaryOptimal => "pi_c",
            PolicySpec::SOnlyOptimal => "pi_s",
            PolicySpec::Priority { .. } => "priority",
            PolicySpec::Stationary { .. } => "stationary",
            PolicySpec::Never => "never",
        }
    }
}

/// Which parameter a sweep varies.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variable", rename_all = "snake_case", deny_unknown_fields)]
pub enum SweepSpec {
    #[default]
    None,
    /// Interference K (requires `k_of_n` interference).
    K { values: Vec<usize> },
    /// Fraction of bad links θ = n_bad / N (requires the good/bad template).
    Theta { values: Vec<f64> },
    /// `v` of every virtual-queue policy.
    V { values: Vec<f64> },
    /// `beta` of every age-based policy.
    Beta { values: Vec<f64> },
}

impl SweepSpec {
    pub fn variable(&self) -> &'static str {
        match self {
            SweepSpec::None => "none",
            SweepSpec::K { .. } => "k",
            SweepSpec::Theta { .. } => "theta",
            SweepSpec::V { .. } => "v",
            SweepSpec::Beta { .. } => "beta",
        }
    }

    pub fn values(&self) -> Vec<f64> {
        match self {
            SweepSpec::None => vec![0.0],
            SweepSpec::K { values } => values.iter().map(|k| *k as f64).collect(),
            SweepSpec::Theta { values } | SweepSpec::V { values } | SweepSpec::Beta { values } => values.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub network: NetworkSpec,
    pub interference: InterferenceSpec,
    pub policies: Vec<PolicySpec>,
    pub horizon: u64,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub sweep: SweepSpec,
    /// Slots at which running estimators are also reported.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checkpoints: Vec<u64>,
    #[serde(default)]
    pub solver: SolverSettings,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

/// One fully built sweep point.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub value: f64,
    pub network: Network,
    pub interference: InterferenceModel,
    pub policies: Vec<PolicySpec>,
}

impl ExperimentConfig {
    /// Parses and validates a config document.
    pub fn from_json(text: &str) -> Result<Self> {
        let config: ExperimentConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Json(j) => Error::Config(format!("{}: {j}", path.display())),
            other => other,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.horizon == 0 {
            return Err(Error::Config("horizon must be at least 1".into()));
        }
        if self.seeds.is_empty() {
            return Err(Error::Config("seeds must list at least one seed".into()));
        }
        if self.policies.is_empty() {
            return Err(Error::Config("policies must list at least one policy".into()));
        }
        let mut labels: Vec<&str> = self.policies.iter().map(PolicySpec::label).collect();
        labels.sort_unstable();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Config(format!("policy `{}` is listed twice; sweep its parameter instead", w[0])));
        }
        for p in &self.policies {
            match p {
                PolicySpec::VirtualQueue { v } if !(v.is_finite() && *v > 0.0) => {
                    return Err(Error::Config(format!("virtual_queue.v must be positive, got {v}")));
                }
                PolicySpec::AgeBased { beta } if !beta.is_finite() => {
                    return Err(Error::Config(format!("age_based.beta must be finite, got {beta}")));
                }
                _ => {}
            }
        }
        self.solver.validate().map_err(|e| Error::Config(e.to_string()))?;
        match &self.sweep {
            SweepSpec::None => {}
            SweepSpec::K { values } => {
                nonempty(values, "k")?;
                if !matches!(self.interference, InterferenceSpec::KOfN { .. }) {
                    return Err(Error::Config("a K sweep needs k_of_n interference".into()));
                }
            }
            SweepSpec::Theta { values } => {
                nonempty(values, "theta")?;
                if !self.network.is_template() {
                    return Err(Error::Config("a theta sweep needs the good/bad network template".into()));
                }
                if let Some(t) = values.iter().find(|t| !(0.0..=1.0).contains(*t)) {
                    return Err(Error::Config(format!("theta values must lie in [0, 1], got {t}")));
                }
            }
            SweepSpec::V { values } => {
                nonempty(values, "v")?;
                if !self.policies.iter().any(|p| matches!(p, PolicySpec::VirtualQueue { .. })) {
                    return Err(Error::Config("a V sweep needs a virtual_queue policy".into()));
                }
                if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
                    return Err(Error::Config(format!("V values must be positive, got {v}")));
                }
            }
            SweepSpec::Beta { values } => {
                nonempty(values, "beta")?;
                if !self.policies.iter().any(|p| matches!(p, PolicySpec::AgeBased { .. })) {
                    return Err(Error::Config("a beta sweep needs an age_based policy".into()));
                }
                if let Some(b) = values.iter().find(|b| !b.is_finite()) {
                    return Err(Error::Config(format!("beta values must be finite, got {b}")));
                }
            }
        }
        // Build every point once so structural errors surface before any simulation.
        self.sweep_points().map(|_| ())
    }

    pub fn sweep_points(&self) -> Result<Vec<SweepPoint>> {
        self.sweep.values().into_iter().map(|value| self.sweep_point(value)).collect()
    }

    fn sweep_point(&self, value: f64) -> Result<SweepPoint> {
        let n = self.network.n_links()?;
        let n_bad = match self.sweep {
            SweepSpec::Theta { .. } => Some((value * n as f64).round() as usize),
            _ => None,
        };
        let network = self.network.build(n_bad).map_err(config_error)?;
        let spec = match (&self.sweep, &self.interference) {
            (SweepSpec::K { .. }, InterferenceSpec::KOfN { .. }) => InterferenceSpec::KOfN { k: value as usize },
            (_, spec) => spec.clone(),
        };
        let interference = InterferenceModel::from_spec(&spec, n).map_err(config_error)?;
        let policies = self
            .policies
            .iter()
            .map(|p| match (&self.sweep, p) {
                (SweepSpec::V { .. }, PolicySpec::VirtualQueue { .. }) => PolicySpec::VirtualQueue { v: value },
                (SweepSpec::Beta { .. }, PolicySpec::AgeBased { .. }) => PolicySpec::AgeBased { beta: value },
                _ => p.clone(),
            })
            .collect::<Vec<_>>();
        for p in &policies {
            match p {
                PolicySpec::Priority { order: Some(order) } => {
                    PriorityPolicy::new(order.clone(), &interference).map_err(config_error)?;
                }
                PolicySpec::Stationary { mixture } => {
                    mixture_of(mixture, &interference).map_err(config_error)?;
                }
                _ => {}
            }
        }
        Ok(SweepPoint { value, network, interference, policies })
    }
}

fn nonempty<T>(values: &[T], name: &str) -> Result<()> {
    if values.is_empty() {
        Err(Error::Config(format!("sweep over {name} needs at least one value")))
    } else {
        Ok(())
    }
}

fn config_error(e: Error) -> Error {
    match e {
        Error::InvalidNetwork(msg) | Error::InvalidSettings(msg) => Error::Config(msg),
        Error::InvalidLinkIndex { .. } => Error::Config(e.to_string()),
        other => other,
    }
}

fn mixture_of(entries: &[MixtureEntry], interference: &InterferenceModel) -> Result<SetMixture> {
    SetMixture::new(interference, entries.iter().map(|e| (e.set.clone(), e.probability)).collect())
}

/// Names of the shipped presets.
pub const PRESETS: [&str; 5] = ["two-link", "fig4-5", "fig6-7", "fig8", "fig9"];

/// Loads a shipped preset, optionally replacing its seeds with `1..=seeds`.
pub fn preset(name: &str, seeds: Option<usize>) -> Result<ExperimentConfig> {
    let text = match name {
        "two-link" => include_str!("../../../presets/two-link.json"),
        "fig4-5" => include_str!("../../../presets/fig4-5.json"),
        "fig6-7" => include_str!("../../../presets/fig6-7.json"),
        "fig8" => include_str!("../../../presets/fig8.json"),
        "fig9" => include_str!("../../../presets/fig9.json"),
        other => {
            return Err(Error::Config(format!("unknown preset `{other}`; available: {}", PRESETS.join(", "))));
        }
    };
    let mut config = ExperimentConfig::from_json(text)?;
    if let Some(k) = seeds {
        if k == 0 {
            return Err(Error::Config("--seeds must be at least 1".into()));
        }
        config.seeds = (1..=k as u64).collect();
    }
    Ok(config)
}

/// Bound columns shared by every row of a sweep point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointBounds {
    pub sweep_value: f64,
    /// Optimal channel-blind peak age.
    pub peak_opt_unknown: f64,
    /// Optimal channel-aware peak age, when `N` is within the state cap.
    pub peak_opt_known: Option<f64>,
    /// Average-age lower bound from the channel-aware optimum when available,
    /// otherwise from the channel-blind optimum.
    pub avg_lower_bound: f64,
    /// Peak-age bound for the virtual-queue policy, when both it and the
    /// channel-aware optimum are available.
    pub virtual_queue_bound: Option<f64>,
}

struct Solved {
    unknown: UnknownPeakSolution,
    known: Option<KnownPeakSolution>,
    bounds: PointBounds,
}

fn solve_point(point: &SweepPoint, settings: &SolverSettings, need_known: bool) -> Result<Solved> {
    let unknown = solve_unknown_peak(&point.network, &point.interference, settings)?;
    let known = if point.network.n_links() <= settings.state_enumeration_cap || need_known {
        Some(solve_known_peak(&point.network, &point.interference, settings)?)
    } else {
        None
    };
    let weights = point.network.weights();
    let avg_lower_bound = match &known {
        Some(k) => average_age_lower_bound(&k.success_rates, weights),
        None => average_age_lower_bound(&unknown.success_rates(&point.network), weights),
    };
    let v = point.policies.iter().find_map(|p| match p {
        PolicySpec::VirtualQueue { v } => Some(*v),
        _ => None,
    });
    let virtual_queue_bound = match (&known, v) {
        (Some(k), Some(v)) => Some(theorem2_bound(k.value, weights, v)),
        _ => None,
    };
    let bounds = PointBounds {
        sweep_value: point.value,
        peak_opt_unknown: unknown.value,
        peak_opt_known: known.as_ref().map(|k| k.value),
        avg_lower_bound,
        virtual_queue_bound,
    };
    Ok(Solved { unknown, known, bounds })
}

fn build_policy(spec: &PolicySpec, point: &SweepPoint, solved: &Solved) -> Result<Box<dyn Policy + Send>> {
    let (net, itf) = (&point.network, &point.interference);
    Ok(match spec {
        PolicySpec::VirtualQueue { v } => Box::new(VirtualQueuePolicy::new(net, itf, *v)?),
        PolicySpec::AgeBased { beta } => Box::new(AgeBasedPolicy::new(net, itf, *beta)?),
        PolicySpec::StationaryOptimal => Box::new(StationaryPolicy::new(solved.unknown.mixture.clone())),
        PolicySpec::SOnlyOptimal => match &solved.known {
            Some(k) => Box::new(k.policy.clone()),
            None => unreachable!("known-channel solve is forced when pi_s is requested"),
        },
        PolicySpec::Priority { order } => match order {
            Some(order) => Box::new(PriorityPolicy::new(order.clone(), itf)?),
            None => Box::new(PriorityPolicy::identity(itf)),
        },
        PolicySpec::Stationary { mixture } => Box::new(StationaryPolicy::new(mixture_of(mixture, itf)?)),
        PolicySpec::Never => Box::new(NeverSchedule),
    })
}

/// One CSV row: one (sweep value, policy, seed, slot) combination.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub sweep_variable: String,
    pub sweep_value: f64,
    pub policy: String,
    pub seed: u64,
    /// Number of slots the estimators cover (the horizon, or a checkpoint).
    pub slot: u64,
    pub n_links: usize,
    pub peak_age: f64,
    pub avg_age: f64,
    pub zero_success_links: usize,
    pub peak_opt_unknown: f64,
    pub peak_opt_known: Option<f64>,
    pub avg_lower_bound: f64,
    pub virtual_queue_bound: Option<f64>,
}

impl ResultRow {
    pub fn peak_age_per_link(&self) -> f64 {
        self.peak_age / self.n_links as f64
    }

    pub fn avg_age_per_link(&self) -> f64 {
        self.avg_age / self.n_links as f64
    }
}

/// One simulated path with everything needed to diagnose it.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub sweep_value: f64,
    pub policy: String,
    pub seed: u64,
    pub trajectory: Trajectory,
    pub metrics: MetricsReport,
    pub checkpoints: Vec<MetricsReport>,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub rows: Vec<ResultRow>,
    pub bounds: Vec<PointBounds>,
    pub runs: Vec<RunRecord>,
}

/// Runs every (sweep value, policy, seed) combination. Runs execute in
/// parallel; output order is fixed by sorting on (sweep value, policy, seed,
/// slot).
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    config.validate()?;
    let points = config.sweep_points()?;
    let solved: Vec<Solved> = points
        .iter()
        .map(|p| {
            let need_known = p.policies.iter().any(|s| matches!(s, PolicySpec::SOnlyOptimal));
            solve_point(p, &config.solver, need_known)
        })
        .collect::<Result<_>>()?;

    let jobs: Vec<(usize, usize, u64)> = (0..points.len())
        .flat_map(|i| (0..points[i].policies.len()).flat_map(move |j| config.seeds.iter().map(move |&s| (i, j, s))))
        .collect();
    let runs: Vec<RunRecord> = jobs
        .par_iter()
        .map(|&(i, j, seed)| {
            let point = &points[i];
            let spec = &point.policies[j];
            let mut policy = build_policy(spec, point, &solved[i])?;
            let (trajectory, metrics, checkpoints) = run_with_checkpoints(
                &point.network,
                &point.interference,
                &mut policy,
                config.horizon,
                seed,
                &config.checkpoints,
            )?;
            Ok(RunRecord { sweep_value: point.value, policy: spec.label().to_string(), seed, trajectory, metrics, checkpoints })
        })
        .collect::<Result<_>>()?;

    let variable = config.sweep.variable().to_string();
    let mut rows = Vec::new();
    for run in &runs {
        let i = points.iter().position(|p| p.value == run.sweep_value).expect("run belongs to a sweep point");
        let b = &solved[i].bounds;
        for m in run.checkpoints.iter().chain(std::iter::once(&run.metrics)) {
            if m.horizon != run.metrics.horizon || std::ptr::eq(m, &run.metrics) {
                rows.push(ResultRow {
                    sweep_variable: variable.clone(),
                    sweep_value: run.sweep_value,
                    policy: run.policy.clone(),
                    seed: run.seed,
                    slot: m.horizon,
                    n_links: points[i].network.n_links(),
                    peak_age: m.weighted_peak_age,
                    avg_age: m.weighted_average_age,
                    zero_success_links: m.zero_success_links.len(),
                    peak_opt_unknown: b.peak_opt_unknown,
                    peak_opt_known: b.peak_opt_known,
                    avg_lower_bound: b.avg_lower_bound,
                    virtual_queue_bound: b.virtual_queue_bound,
                });
            }
        }
    }
    rows.sort_by(|a, b| {
        a.sweep_value
            .total_cmp(&b.sweep_value)
            .then_with(|| a.policy.cmp(&b.policy))
            .then_with(|| a.seed.cmp(&b.seed))
            .then_with(|| a.slot.cmp(&b.slot))
    });
    Ok(ExperimentOutput { rows, bounds: solved.into_iter().map(|s| s.bounds).collect(), runs })
}

/// Formats `x` with six significant digits in plain decimal notation;
/// infinities print as `inf`.
pub fn format_sig6(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    // `{:e}` rounds to six significant digits, carrying into the exponent.
    let sci = format!("{:.5e}", x);
    let (_, exp) = sci.split_once('e').expect("scientific notation");
    let exponent: i32 = exp.parse().expect("integer exponent");
    let rounded: f64 = sci.parse().expect("valid float");
    let decimals = (5 - exponent).max(0) as usize;
    format!("{:.*}", decimals, rounded)
}

fn opt_cell(x: Option<f64>) -> String {
    x.map(format_sig6).unwrap_or_default()
}

pub const CSV_HEADER: [&str; 14] = [
    "sweep_variable",
    "sweep_value",
    "policy",
    "seed",
    "slot",
    "peak_age_per_link",
    "avg_age_per_link",
    "peak_age",
    "avg_age",
    "zero_success_links",
    "peak_opt_unknown",
    "peak_opt_known",
    "avg_lower_bound",
    "virtual_queue_bound",
];

pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.sweep_variable.clone(),
            format_sig6(r.sweep_value),
            r.policy.clone(),
            r.seed.to_string(),
            r.slot.to_string(),
            format_sig6(r.peak_age_per_link()),
            format_sig6(r.avg_age_per_link()),
            format_sig6(r.peak_age),
            format_sig6(r.avg_age),
            r.zero_success_links.to_string(),
            format_sig6(r.peak_opt_unknown),
            opt_cell(r.peak_opt_known),
            format_sig6(r.avg_lower_bound),
            opt_cell(r.virtual_queue_bound),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Mean and standard error over seeds for one (sweep value, policy, slot).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub sweep_value: f64,
    pub policy: String,
    pub slot: u64,
    pub runs: usize,
    pub peak_age_mean: f64,
    pub peak_age_stderr: f64,
    pub avg_age_mean: f64,
    pub avg_age_stderr: f64,
}

/// Sample mean and standard error of the mean.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

pub fn summarize(rows: &[ResultRow]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(u64, String, u64), (f64, Vec<f64>, Vec<f64>)> = BTreeMap::new();
    for r in rows {
        let key = (r.sweep_value.to_bits() ^ (1 << 63), r.policy.clone(), r.slot);
        let entry = groups.entry(key).or_insert_with(|| (r.sweep_value, Vec::new(), Vec::new()));
        entry.1.push(r.peak_age);
        entry.2.push(r.avg_age);
    }
    let mut out: Vec<SummaryRow> = groups
        .into_iter()
        .map(|((_, policy, slot), (value, peaks, avgs))| {
            let (peak_age_mean, peak_age_stderr) = mean_stderr(&peaks);
            let (avg_age_mean, avg_age_stderr) = mean_stderr(&avgs);
            SummaryRow {
                sweep_value: value,
                policy,
                slot,
                runs: peaks.len(),
                peak_age_mean,
                peak_age_stderr,
                avg_age_mean,
                avg_age_stderr,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        a.sweep_value.total_cmp(&b.sweep_value).then_with(|| a.policy.cmp(&b.policy)).then(a.slot.cmp(&b.slot))
    });
    out
}

/// Human-readable summary table.
pub fn format_summary(config: &ExperimentConfig, summary: &[SummaryRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>12} {:>10} {:>9} {:>14} {:>10} {:>14} {:>10}",
        config.sweep.variable(),
        "policy",
        "slot",
        "peak/N",
        "±se",
        "avg/N",
        "±se"
    );
    for r in summary {
        let n = config.network.n_links().unwrap_or(1) as f64;
        let _ = writeln!(
            s,
            "{:>12} {:>10} {:>9} {:>14} {:>10} {:>14} {:>10}",
            format_sig6(r.sweep_value),
            r.policy,
            r.slot,
            format_sig6(r.peak_age_mean / n),
            format_sig6(r.peak_age_stderr / n),
            format_sig6(r.avg_age_mean / n),
            format_sig6(r.avg_age_stderr / n),
        );
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsEntry {
    pub sweep_value: f64,
    pub report: BoundReport,
}

/// Bound report for every sweep point. `V` and `β` come from the configured
/// policies (or the sweep), defaulting to 1.
pub fn solve_bounds(config: &ExperimentConfig) -> Result<Vec<BoundsEntry>> {
    config.validate()?;
    config
        .sweep_points()?
        .into_iter()
        .map(|p| {
            let v = p
                .policies
                .iter()
                .find_map(|s| if let PolicySpec::VirtualQueue { v } = s { Some(*v) } else { None })
                .unwrap_or(1.0);
            let beta = p
                .policies
                .iter()
                .find_map(|s| if let PolicySpec::AgeBased { beta } = s { Some(*beta) } else { None })
                .unwrap_or(1.0);
            let report = compute_bounds(&p.network, &p.interference, &config.solver, v, beta, None)?;
            Ok(BoundsEntry { sweep_value: p.value, report })
        })
        .collect()
}

/// Pathwise checks for one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnosticRow {
    pub sweep_value: f64,
    pub policy: String,
    pub seed: u64,
    pub report: DiagnosticsReport,
}

impl DiagnosticRow {
    pub fn passed(&self) -> bool {
        self.report.identities_hold() && self.report.lemma2_consistent() && self.report.lemma3_consistent()
    }
}

/// Runs the experiment and checks, on every path, the telescoping identities,
/// the boundary term of the average-age rewrite (at `beta`) and the pathwise
/// floor of the peak/average inequality.
pub fn diagnose(config: &ExperimentConfig, beta: f64) -> Result<Vec<DiagnosticRow>> {
    let out = run_experiment(config)?;
    let points = config.sweep_points()?;
    Ok(out
        .runs
        .iter()
        .map(|r| {
            let net = &points.iter().find(|p| p.value == r.sweep_value).expect("known sweep point").network;
            DiagnosticRow {
                sweep_value: r.sweep_value,
                policy: r.policy.clone(),
                seed: r.seed,
                report: DiagnosticsReport::new(&r.trajectory, &r.metrics, net.weights(), beta),
            }
        })
        .collect())
}

pub fn format_diagnostics(rows: &[DiagnosticRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>10} {:>10} {:>20} {:>8} {:>8} {:>12} {:>12} {:>12} {:>6}",
        "sweep", "policy", "seed", "cons", "square", "lemma2_err", "lemma3", "floor", "result"
    );
    for r in rows {
        let d = &r.report;
        let max_abs = |v: &[i128]| v.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
        let l2 = d
            .lemma2_gap
            .iter()
            .zip(&d.lemma2_boundary)
            .map(|(g, b)| (g - b).abs())
            .fold(0.0, f64::max);
        let _ = writeln!(
            s,
            "{:>10} {:>10} {:>20} {:>8} {:>8} {:>12.3e} {:>12} {:>12} {:>6}",
            format_sig6(r.sweep_value),
            r.policy,
            r.seed,
            max_abs(&d.conservation_residual),
            max_abs(&d.squared_identity_residual),
            l2,
            format_sig6(d.lemma3_slack),
            format_sig6(d.lemma3_floor),
            if r.passed() { "pass" } else { "FAIL" }
        );
    }
    s
}
