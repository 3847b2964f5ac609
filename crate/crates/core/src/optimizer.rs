//! Peak-age optimization and performance bounds.
//!
//! Both optimization problems minimize a separable convex objective
//!
//! ```text
//! g(x) = Σ_e w_e / (s_e x_e)
//! ```
//!
//! over a polytope given only through a linear-maximization oracle. For the
//! channel-blind problem `x = f` is the activation frequency, `s = γ`, and the
//! polytope is the convex hull of feasible-set indicator vectors; the oracle is
//! [`max_weight_set`]. For the channel-aware problem `x = α` is the success
//! rate, `s = 1`, and the polytope is the S-only rate region; its oracle is a
//! deterministic per-state max-weight rule whose rates come from enumerating
//! all `2^N` channel states.
//!
//! Frank–Wolfe keeps the iterate as an explicit convex combination of oracle
//! vertices, so the solution doubles as an executable randomized policy.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ChannelState, InterferenceModel, LinkSet, Network};
use crate::policies::{max_weight_set, DirectionRule, SOnlyPolicy, SetMixture};

/// Iterates are floored at this value when evaluating `g` and its gradient.
pub const RATE_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepRule {
    /// Pairwise steps between the oracle vertex and the worst active vertex,
    /// with exact line search, each followed by Newton steps that re-optimize
    /// the weights of the active vertices.
    Pairwise,
    /// Classic `2/(k+2)` step, halved until the objective does not increase.
    Standard,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverSettings {
    pub max_iterations: usize,
    pub gap_tolerance: f64,
    pub state_enumeration_cap: usize,
    pub step_rule: StepRule,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            max_iterations: 100_000,
            gap_tolerance: 1e-8,
            state_enumeration_cap: 16,
            step_rule: StepRule::Pairwise,
        }
    }
}

impl SolverSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.gap_tolerance.is_finite() && self.gap_tolerance > 0.0) {
            return Err(Error::InvalidSettings(format!(
                "gap_tolerance must be positive, got {}",
                self.gap_tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidSettings("max_iterations must be at least 1".into()));
        }
        if self.state_enumeration_cap > 30 {
            return Err(Error::InvalidSettings(format!(
                "state_enumeration_cap {} is beyond what exact enumeration can handle",
                self.state_enumeration_cap
            )));
        }
        Ok(())
    }
}

/// `g(x) = Σ w_e / (scale_e x_e)`; `scale = γ` for activation frequencies and
/// `scale = 1` for success rates.
#[derive(Debug, Clone, PartialEq)]
pub struct PeakObjective {
    weights: Vec<f64>,
    scale: Vec<f64>,
}

impl PeakObjective {
    /// Objective over activation frequencies `f` (channel not observed).
    pub fn over_frequencies(network: &Network) -> Self {
        PeakObjective { weights: network.weights().to_vec(), scale: network.gamma().to_vec() }
    }

    /// Objective over success rates `α` (channel observed).
    pub fn over_rates(network: &Network) -> Self {
        PeakObjective { weights: network.weights().to_vec(), scale: vec![1.0; network.n_links()] }
    }

    /// Unfloored value: `+∞` as soon as any coordinate is zero.
    pub fn value(&self, x: &[f64]) -> f64 {
        self.terms(x, |w, s, xe| if xe > 0.0 { w / (s * xe) } else { f64::INFINITY })
    }

    fn floored_value(&self, x: &[f64]) -> f64 {
        self.terms(x, |w, s, xe| w / (s * xe.max(RATE_FLOOR)))
    }

    /// Negative gradient `w_e / (scale_e x_e^2)`, all positive.
    pub fn descent_scores(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(&self.weights)
            .zip(&self.scale)
            .map(|((&xe, &w), &s)| {
                let xe = xe.max(RATE_FLOOR);
                w / (s * xe * xe)
            })
            .collect()
    }

    fn terms(&self, x: &[f64], f: impl Fn(f64, f64, f64) -> f64) -> f64 {
        x.iter().zip(&self.weights).zip(&self.scale).map(|((&xe, &w), &s)| f(w, s, xe)).sum()
    }

    /// Derivative of `t ↦ g(x + t d)`.
    fn directional_derivative(&self, x: &[f64], d: &[f64], t: f64) -> f64 {
        let mut acc = 0.0;
        for e in 0..x.len() {
            if d[e] == 0.0 {
                continue;
            }
            let xe = x[e] + t * d[e];
            if xe <= 0.0 {
                return if d[e] < 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
            }
            acc -= self.weights[e] * d[e] / (self.scale[e] * xe * xe);
        }
        acc
    }
}

/// Result of a Frank–Wolfe run. `vertices` pairs each active oracle answer
/// with its point in the polytope and its mixture weight.
#[derive(Debug, Clone)]
pub struct FrankWolfeOutcome<V> {
    pub vertices: Vec<(V, Vec<f64>, f64)>,
    pub point: Vec<f64>,
    pub value: f64,
    pub gap: f64,
    pub iterations: usize,
    /// Objective value at the start of every iteration.
    pub trace: Vec<f64>,
}

/// Minimizes `objective` over the convex hull of oracle answers.
///
/// `initial` must give a strictly positive starting point. `oracle` receives
/// the descent scores and returns the vertex maximizing their inner product.
pub fn frank_wolfe<V: Clone>(
    objective: &PeakObjective,
    initial: Vec<(V, Vec<f64>)>,
    oracle: &mut dyn FnMut(&[f64]) -> (V, Vec<f64>),
    settings: &SolverSettings,
) -> Result<FrankWolfeOutcome<V>> {
    settings.validate()?;
    assert!(!initial.is_empty(), "Frank–Wolfe needs a starting vertex");
    let n = initial[0].1.len();
    let share = 1.0 / initial.len() as f64;

    let mut active: Vec<(V, Vec<f64>, f64)> = Vec::new();
    for (id, point) in initial {
        add_weight(&mut active, id, point, share);
    }
    let mut x = vec![0.0; n];
    for (_, point, weight) in &active {
        for e in 0..n {
            x[e] += weight * point[e];
        }
    }
    debug_assert!(x.iter().all(|v| *v > 0.0), "starting point must be interior");

    let mut trace = Vec::new();
    let mut gap = f64::INFINITY;
    for k in 0..=settings.max_iterations {
        let value = objective.floored_value(&x);
        trace.push(value);
        let scores = objective.descent_scores(&x);
        let (id, vertex) = oracle(&scores);
        gap = dot(&scores, &vertex) - dot(&scores, &x);
        if gap <= settings.gap_tolerance {
            assert!(
                x.iter().all(|v| *v > RATE_FLOOR),
                "rate floor active at the returned solution"
            );
            active.retain(|(_, _, w)| *w > 0.0);
            return Ok(FrankWolfeOutcome {
                vertices: active,
                value: objective.value(&x),
                point: x,
                gap,
                iterations: k,
                trace,
            });
        }
        if k == settings.max_iterations {
            break;
        }
        match settings.step_rule {
            StepRule::Standard => {
                let mut eta = 2.0 / (k as f64 + 2.0);
                let mut candidate = blend(&x, &vertex, eta);
                let mut halvings = 0;
                while objective.floored_value(&candidate) > value {
                    halvings += 1;
                    if halvings > 60 {
                        eta = 0.0;
                        candidate.clone_from(&x);
                        break;
                    }
                    eta *= 0.5;
                    candidate = blend(&x, &vertex, eta);
                }
                if eta > 0.0 {
                    for (_, _, w) in active.iter_mut() {
                        *w *= 1.0 - eta;
                    }
                    add_weight(&mut active, id, vertex, eta);
                    x = candidate;
                }
            }
            StepRule::Pairwise => {
                let away = active
                    .iter()
                    .enumerate()
                    .min_by(|a, b| dot(&scores, &a.1 .1).total_cmp(&dot(&scores, &b.1 .1)))
                    .map(|(i, _)| i)
                    .expect("active set is never empty");
                let same = active[away].1 == vertex;
                let (direction, t_max) = if same {
                    // Degenerate pair; fall back to a plain Frank–Wolfe direction.
                    (sub(&vertex, &x), 1.0)
                } else {
                    (sub(&vertex, &active[away].1), active[away].2)
                };
                let t = line_search(objective, &x, &direction, t_max);
                if t <= 0.0 {
                    continue;
                }
                for e in 0..n {
                    x[e] += t * direction[e];
                }
                if same {
                    for (_, _, w) in active.iter_mut() {
                        *w *= 1.0 - t;
                    }
                    add_weight(&mut active, id, vertex, t);
                } else {
                    if t >= t_max {
                        active.swap_remove(away);
                    } else {
                        active[away].2 -= t;
                    }
                    add_weight(&mut active, id, vertex, t);
                }
                correct_weights(objective, &mut active, &mut x);
            }
        }
    }
    Err(Error::NotConverged { iterations: settings.max_iterations, gap })
}

const CORRECTIVE_STEPS: usize = 20;

/// Minimizes the objective over the hull of the active vertices by Newton
/// steps on their weights, dropping vertices whose weight reaches zero.
///
/// Plain pairwise steps crawl when two nearly tied vertices alternate as the
/// oracle answer; re-solving on the active face removes the zig-zag. Never
/// increases the objective.
fn correct_weights<V>(objective: &PeakObjective, active: &mut Vec<(V, Vec<f64>, f64)>, x: &mut Vec<f64>) {
    let n = x.len();
    for _ in 0..CORRECTIVE_STEPS {
        let m = active.len();
        if m < 2 {
            return;
        }
        let value = objective.value(x);
        let descent = objective.descent_scores(x);
        let curvature: Vec<f64> = (0..n)
            .map(|e| {
                let xe = x[e].max(RATE_FLOOR);
                2.0 * objective.weights[e] / (objective.scale[e] * xe * xe * xe)
            })
            .collect();

        // KKT system of the quadratic model on {Σ d_i = 0}.
        let dim = m + 1;
        let mut kkt = vec![vec![0.0; dim + 1]; dim];
        let mut grad = vec![0.0; m];
        for i in 0..m {
            let vi = &active[i].1;
            grad[i] = -dot(&descent, vi);
            for j in 0..=i {
                let vj = &active[j].1;
                let h: f64 = (0..n).map(|e| vi[e] * vj[e] * curvature[e]).sum();
                kkt[i][j] = h;
                kkt[j][i] = h;
            }
            kkt[i][m] = 1.0;
            kkt[m][i] = 1.0;
            kkt[i][dim] = -grad[i];
        }
        let ridge = 1e-12 * (0..m).map(|i| kkt[i][i]).fold(0.0, f64::max);
        for (i, row) in kkt.iter_mut().enumerate().take(m) {
            row[i] += ridge;
        }
        let Some(sol) = solve_dense(kkt) else { return };
        let d = &sol[..m];
        let slope = dot(&grad, d);
        if slope.is_nan() || slope >= -1e-15 * (1.0 + value.abs()) {
            return;
        }

        // Largest step keeping every weight nonnegative.
        let mut s_max = f64::INFINITY;
        let mut blocking = None;
        for i in 0..m {
            if d[i] < 0.0 {
                let s = -active[i].2 / d[i];
                if s < s_max {
                    s_max = s;
                    blocking = Some(i);
                }
            }
        }
        let mut s = s_max.min(1.0);
        let mut accepted = None;
        for _ in 0..50 {
            let weights: Vec<f64> = (0..m).map(|i| (active[i].2 + s * d[i]).max(0.0)).collect();
            let candidate = combine(active, &weights, n);
            if objective.value(&candidate) <= value + 1e-4 * s * slope {
                accepted = Some((weights, candidate));
                break;
            }
            s *= 0.5;
        }
        let Some((mut weights, candidate)) = accepted else { return };
        if s >= s_max {
            if let Some(i) = blocking {
                weights[i] = 0.0;
            }
        }
        for (slot, w) in active.iter_mut().zip(&weights) {
            slot.2 = *w;
        }
        *x = candidate;
        active.retain(|(_, _, w)| *w > 0.0);
    }
}

fn combine<V>(active: &[(V, Vec<f64>, f64)], weights: &[f64], n: usize) -> Vec<f64> {
    let mut x = vec![0.0; n];
    for ((_, point, _), w) in active.iter().zip(weights) {
        for e in 0..n {
            x[e] += w * point[e];
        }
    }
    x
}

/// Gaussian elimination with partial pivoting on an augmented matrix.
fn solve_dense(mut a: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor != 0.0 {
                let (top, bottom) = a.split_at_mut(row);
                for (target, source) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                    *target -= factor * source;
                }
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (a[row][n] - tail) / a[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

fn line_search(objective: &PeakObjective, x: &[f64], d: &[f64], t_max: f64) -> f64 {
    if objective.directional_derivative(x, d, t_max) <= 0.0 {
        return t_max;
    }
    let (mut lo, mut hi) = (0.0, t_max);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if objective.directional_derivative(x, d, mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    lo
}

fn add_weight<V>(active: &mut Vec<(V, Vec<f64>, f64)>, id: V, point: Vec<f64>, weight: f64) {
    if let Some(slot) = active.iter_mut().find(|(_, p, _)| *p == point) {
        slot.2 += weight;
    } else {
        active.push((id, point, weight));
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn blend(x: &[f64], v: &[f64], eta: f64) -> Vec<f64> {
    x.iter().zip(v).map(|(a, b)| (1.0 - eta) * a + eta * b).collect()
}

fn check_schedulable(interference: &InterferenceModel) -> Result<Vec<LinkSet>> {
    (0..interference.n_links())
        .map(|e| interference.covering_set(e).ok_or(Error::UnschedulableLink { link: e }))
        .collect()
}

fn indicator(set: &LinkSet, n: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    for e in set.iter() {
        v[e] = 1.0;
    }
    v
}

/// Optimal channel-blind stationary policy.
#[derive(Debug, Clone)]
pub struct UnknownPeakSolution {
    pub mixture: SetMixture,
    pub frequencies: Vec<f64>,
    pub value: f64,
    pub gap: f64,
    pub iterations: usize,
    pub trace: Vec<f64>,
}

impl UnknownPeakSolution {
    /// Success rates `α_e = γ_e f_e`.
    pub fn success_rates(&self, network: &Network) -> Vec<f64> {
        self.frequencies.iter().zip(network.gamma()).map(|(f, g)| f * g).collect()
    }
}

/// Minimizes `Σ w_e / (γ_e f_e)` over activation frequencies `f = Mx`,
/// `1ᵀx ≤ 1`, `x ≥ 0`.
pub fn solve_unknown_peak(
    network: &Network,
    interference: &InterferenceModel,
    settings: &SolverSettings,
) -> Result<UnknownPeakSolution> {
    let n = network.n_links();
    let covers = check_schedulable(interference)?;
    let initial = covers.into_iter().map(|s| {
        let point = indicator(&s, n);
        (s, point)
    });
    let objective = PeakObjective::over_frequencies(network);
    let mut oracle = |scores: &[f64]| {
        let set = max_weight_set(interference, scores);
        let point = indicator(&set, n);
        (set, point)
    };
    let outcome = frank_wolfe(&objective, initial.collect(), &mut oracle, settings)?;
    let entries = outcome.vertices.into_iter().map(|(set, _, w)| (set, w)).collect();
    let mixture = SetMixture::new(interference, entries)?;
    Ok(UnknownPeakSolution {
        mixture,
        frequencies: outcome.point,
        value: outcome.value,
        gap: outcome.gap,
        iterations: outcome.iterations,
        trace: outcome.trace,
    })
}

/// Water-filling solution of the channel-blind problem under K-of-N
/// interference, where the frequency polytope is `{Σ f_e ≤ K, 0 ≤ f_e ≤ 1}`.
///
/// The KKT conditions give `f_e = min(1, ν sqrt(w_e/γ_e))`; `ν` is found by
/// bisection so that `Σ f_e = min(K, N)`.
pub fn solve_kofn_closed_form(network: &Network, k: usize) -> Result<(Vec<f64>, f64)> {
    let n = network.n_links();
    if k == 0 {
        return Err(Error::InvalidNetwork("K must be at least 1".into()));
    }
    let ratios: Vec<f64> = network.weights().iter().zip(network.gamma()).map(|(w, g)| (w / g).sqrt()).collect();
    let target = k.min(n) as f64;
    let fill = |nu: f64| -> Vec<f64> { ratios.iter().map(|r| (nu * r).min(1.0)).collect() };
    let f = if k >= n {
        vec![1.0; n]
    } else {
        let mut lo = 0.0;
        let mut hi = 1.0 / ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let mut f = fill(hi);
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            f = fill(mid);
            let total: f64 = f.iter().sum();
            if (total - target).abs() <= 1e-12 {
                break;
            }
            if total > target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        f
    };
    let value = PeakObjective::over_frequencies(network).value(&f);
    Ok((f, value))
}

/// Exact success rates of a deterministic per-state rule, by enumerating all
/// channel states with positive probability.
pub fn exact_success_rates(
    network: &Network,
    state_cap: usize,
    mut rule: impl FnMut(&ChannelState) -> LinkSet,
) -> Result<Vec<f64>> {
    let states = ChannelStates::enumerate(network, state_cap)?;
    Ok(states.rates(&mut rule))
}

/// Every channel state with positive probability, with its probability.
struct ChannelStates {
    n: usize,
    states: Vec<(ChannelState, f64)>,
}

impl ChannelStates {
    fn enumerate(network: &Network, cap: usize) -> Result<Self> {
        let n = network.n_links();
        if n > cap {
            return Err(Error::StateCapExceeded { n_links: n, cap });
        }
        let gamma = network.gamma();
        let mut states = Vec::new();
        for mask in 0u64..(1u64 << n) {
            let state = ChannelState::from_mask(mask, n);
            let p: f64 = (0..n).map(|e| if state.is_on(e) { gamma[e] } else { 1.0 - gamma[e] }).product();
            if p > 0.0 {
                states.push((state, p));
            }
        }
        Ok(ChannelStates { n, states })
    }

    fn rates(&self, rule: &mut dyn FnMut(&ChannelState) -> LinkSet) -> Vec<f64> {
        let mut alpha = vec![0.0; self.n];
        for (state, p) in &self.states {
            for e in rule(state).iter() {
                if state.is_on(e) {
                    alpha[e] += p;
                }
            }
        }
        alpha
    }
}

/// Optimal S-only policy when the channel state is observed each slot.
#[derive(Debug, Clone)]
pub struct KnownPeakSolution {
    pub policy: SOnlyPolicy,
    pub success_rates: Vec<f64>,
    pub value: f64,
    pub gap: f64,
    pub iterations: usize,
    pub trace: Vec<f64>,
}

/// Minimizes `Σ w_e / α_e` over the S-only rate region.
pub fn solve_known_peak(
    network: &Network,
    interference: &InterferenceModel,
    settings: &SolverSettings,
) -> Result<KnownPeakSolution> {
    settings.validate()?;
    let n = network.n_links();
    check_schedulable(interference)?;
    let states = ChannelStates::enumerate(network, settings.state_enumeration_cap)?;
    let rates_of = |direction: &[f64]| {
        let rule = DirectionRule { direction: direction.to_vec(), weight: 1.0 };
        states.rates(&mut |s: &ChannelState| rule.apply(interference, s))
    };

    // Single-link priority rules: every link gets α_e ≥ γ_e / N.
    let initial: Vec<(Vec<f64>, Vec<f64>)> = (0..n)
        .map(|j| {
            let mut c = vec![0.0; n];
            c[j] = 1.0;
            let rates = rates_of(&c);
            (c, rates)
        })
        .collect();
    let objective = PeakObjective::over_rates(network);
    let mut oracle = |scores: &[f64]| {
        let direction = scores.to_vec();
        let rates = rates_of(&direction);
        (direction, rates)
    };
    let outcome = frank_wolfe(&objective, initial, &mut oracle, settings)?;
    let total: f64 = outcome.vertices.iter().map(|(_, _, w)| w).sum();
    let rules = outcome
        .vertices
        .into_iter()
        .map(|(direction, _, w)| DirectionRule { direction, weight: w / total })
        .collect();
    Ok(KnownPeakSolution {
        policy: SOnlyPolicy::new(interference, rules)?,
        success_rates: outcome.point,
        value: outcome.value,
        gap: outcome.gap,
        iterations: outcome.iterations,
        trace: outcome.trace,
    })
}

/// `c₁(β) = (10 + 2β − β²) / 4`.
pub fn c1(beta: f64) -> f64 {
    (10.0 + 2.0 * beta - beta * beta) / 4.0
}

/// `c₂(β) = (4 + 2β − β²) / 2`.
pub fn c2(beta: f64) -> f64 {
    (4.0 + 2.0 * beta - beta * beta) / 2.0
}

/// Lower bound on the optimal average age from optimal success rates:
/// `½ Σ w_e/α*_e + ½ Σ w_e`.
pub fn average_age_lower_bound(alpha_star: &[f64], weights: &[f64]) -> f64 {
    let peak: f64 = weights.iter().zip(alpha_star).map(|(w, a)| w / a).sum();
    0.5 * peak + 0.5 * weights.iter().sum::<f64>()
}

/// Upper bound on the virtual-queue policy's peak age:
/// `peak_opt + ½ Σ w + (1/2V) Σ w`.
pub fn theorem2_bound(peak_opt: f64, weights: &[f64], v: f64) -> f64 {
    let total: f64 = weights.iter().sum();
    peak_opt + 0.5 * total + total / (2.0 * v)
}

/// Upper bounds on the age-based policy's peak and average age:
/// `(4 peak_opt − c₂(β) Σw, 4 avg_reference − c₁(β) Σw)`.
///
/// `avg_reference` may be any policy's average age: the optimum is no larger,
/// so the returned average bound is implied by the one at the optimum.
pub fn theorem3_bounds(peak_opt: f64, avg_reference: f64, weights: &[f64], beta: f64) -> (f64, f64) {
    let total: f64 = weights.iter().sum();
    (4.0 * peak_opt - c2(beta) * total, 4.0 * avg_reference - c1(beta) * total)
}

/// A bound that is either a number or the reason it was not computed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BoundValue {
    Value(f64),
    NotComputed(String),
}

impl BoundValue {
    pub fn value(&self) -> Option<f64> {
        match self {
            BoundValue::Value(v) => Some(*v),
            BoundValue::NotComputed(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerBoundSource {
    KnownChannel,
    UnknownChannel,
}

/// Solved optima and the bounds derived from them for one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub peak_opt_unknown: f64,
    pub peak_opt_known: BoundValue,
    pub avg_age_lower_bound: f64,
    /// Which optimum's rates fed `avg_age_lower_bound`.
    pub avg_lower_bound_source: LowerBoundSource,
    pub v: f64,
    pub beta: f64,
    pub theorem2_bound: BoundValue,
    pub theorem3_peak_bound: BoundValue,
    pub theorem3_avg_bound: BoundValue,
    pub c1_beta: f64,
    pub c2_beta: f64,
}

const NEEDS_KNOWN: &str = "not computed: N too large";

/// Solves both peak-age problems (the channel-aware one only when `N` is
/// within the state cap) and evaluates every bound.
///
/// `avg_reference` is a simulated average age of any policy; without it the
/// average-age bound of the age-based policy is left uncomputed.
pub fn compute_bounds(
    network: &Network,
    interference: &InterferenceModel,
    settings: &SolverSettings,
    v: f64,
    beta: f64,
    avg_reference: Option<f64>,
) -> Result<BoundReport> {
    let unknown = solve_unknown_peak(network, interference, settings)?;
    let known = match solve_known_peak(network, interference, settings) {
        Ok(sol) => Some(sol),
        Err(Error::StateCapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let weights = network.weights();
    let (avg_age_lower_bound, avg_lower_bound_source) = match &known {
        Some(k) => (average_age_lower_bound(&k.success_rates, weights), LowerBoundSource::KnownChannel),
        None => (
            average_age_lower_bound(&unknown.success_rates(network), weights),
            LowerBoundSource::UnknownChannel,
        ),
    };
    let not_computed = || BoundValue::NotComputed(NEEDS_KNOWN.to_string());
    let (peak_opt_known, theorem2, theorem3_peak) = match &known {
        Some(k) => (
            BoundValue::Value(k.value),
            BoundValue::Value(theorem2_bound(k.value, weights, v)),
            BoundValue::Value(theorem3_bounds(k.value, 0.0, weights, beta).0),
        ),
        None => (not_computed(), not_computed(), not_computed()),
    };
    let theorem3_avg = match avg_reference {
        Some(r) => BoundValue::Value(theorem3_bounds(0.0, r, weights, beta).1),
        None => BoundValue::NotComputed("not computed: needs a simulated reference policy".into()),
    };
    Ok(BoundReport {
        peak_opt_unknown: unknown.value,
        peak_opt_known,
        avg_age_lower_bound,
        avg_lower_bound_source,
        v,
        beta,
        theorem2_bound: theorem2,
        theorem3_peak_bound: theorem3_peak,
        theorem3_avg_bound: theorem3_avg,
        c1_beta: c1(beta),
        c2_beta: c2(beta),
    })
}
