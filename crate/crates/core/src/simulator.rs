//! Slotted-time simulation and age estimators.
//!
//! Each slot runs in a fixed order: draw the channel state, ask the policy
//! for a set, resolve successes `U_e S_e`, accumulate the running sums with
//! the pre-update age `A_e(τ)`, then apply `A_e ← 1 + A_e − U_e S_e A_e`.
//! Ages start at zero.
//!
//! All running sums are integers, so the pathwise identities checked in this
//! module hold exactly rather than up to rounding.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{sample_channel, ChannelState, InterferenceModel, LinkSet, Network};
use crate::policies::Policy;
use crate::rng::{RngStream, CHANNEL_STREAM, POLICY_STREAM};

/// Running sums of one simulated path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trajectory {
    pub horizon: u64,
    pub seed: u64,
    /// `A_e(T)`.
    pub final_ages: Vec<u64>,
    /// `Σ_τ A_e(τ)`.
    pub age_sum: Vec<u128>,
    /// `Σ_τ U_e S_e A_e(τ)`.
    pub peak_sum: Vec<u128>,
    /// `Σ_τ U_e S_e A_e(τ)^2`.
    pub peak_square_sum: Vec<u128>,
    /// `Σ_τ U_e S_e`.
    pub successes: Vec<u64>,
    /// Successes that ended an interval of positive age, i.e. all successes
    /// except one at slot 0 while `A_e(0) = 0`.
    pub peak_samples: Vec<u64>,
}

impl Trajectory {
    fn new(n: usize, seed: u64) -> Self {
        Trajectory {
            horizon: 0,
            seed,
            final_ages: vec![0; n],
            age_sum: vec![0; n],
            peak_sum: vec![0; n],
            peak_square_sum: vec![0; n],
            successes: vec![0; n],
            peak_samples: vec![0; n],
        }
    }

    pub fn n_links(&self) -> usize {
        self.final_ages.len()
    }
}

/// Estimators computed from a [`Trajectory`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    pub horizon: u64,
    /// `Σ U S A / #peaks` per link; `+∞` when the link never succeeded.
    pub peak_age: Vec<f64>,
    /// `(1/T) Σ A` per link.
    pub average_age: Vec<f64>,
    /// `Σ w_e × peak_age_e`.
    pub weighted_peak_age: f64,
    /// `Σ w_e × average_age_e`.
    pub weighted_average_age: f64,
    /// `(1/T) Σ U S` per link.
    pub success_rate: Vec<f64>,
    pub zero_success_links: Vec<usize>,
}

impl MetricsReport {
    pub fn from_trajectory(trajectory: &Trajectory, network: &Network) -> Self {
        let t = trajectory.horizon as f64;
        let n = trajectory.n_links();
        let peak_age: Vec<f64> = (0..n)
            .map(|e| match trajectory.peak_samples[e] {
                0 => f64::INFINITY,
                k => trajectory.peak_sum[e] as f64 / k as f64,
            })
            .collect();
        let average_age: Vec<f64> = trajectory.age_sum.iter().map(|s| *s as f64 / t).collect();
        let success_rate = trajectory.successes.iter().map(|s| *s as f64 / t).collect();
        let zero_success_links = (0..n).filter(|&e| trajectory.peak_samples[e] == 0).collect();
        let w = network.weights();
        MetricsReport {
            horizon: trajectory.horizon,
            weighted_peak_age: peak_age.iter().zip(w).map(|(a, w)| a * w).sum(),
            weighted_average_age: average_age.iter().zip(w).map(|(a, w)| a * w).sum(),
            peak_age,
            average_age,
            success_rate,
            zero_success_links,
        }
    }

    pub fn all_links_served(&self) -> bool {
        self.zero_success_links.is_empty()
    }
}

/// What happened in one slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotRecord {
    pub slot: u64,
    pub channel: ChannelState,
    pub decision: LinkSet,
    pub ages_before: Vec<u64>,
    pub ages_after: Vec<u64>,
}

/// Step-by-step simulation of one path.
///
/// Channel bits come from stream [`CHANNEL_STREAM`] of the seed and policy
/// randomness from stream [`POLICY_STREAM`], so a policy's random draws never
/// shift the channel sequence.
pub struct Simulation<'a> {
    network: &'a Network,
    interference: &'a InterferenceModel,
    channel_rng: RngStream,
    policy_rng: RngStream,
    ages: Vec<u64>,
    trajectory: Trajectory,
}

impl<'a> Simulation<'a> {
    pub fn new(network: &'a Network, interference: &'a InterferenceModel, seed: u64) -> Self {
        let n = network.n_links();
        Simulation {
            network,
            interference,
            channel_rng: RngStream::with_stream(seed, CHANNEL_STREAM),
            policy_rng: RngStream::with_stream(seed, POLICY_STREAM),
            ages: vec![0; n],
            trajectory: Trajectory::new(n, seed),
        }
    }

    pub fn slot(&self) -> u64 {
        self.trajectory.horizon
    }

    pub fn ages(&self) -> &[u64] {
        &self.ages
    }

    /// Advances one slot and returns the set that was scheduled.
    pub fn advance(&mut self, policy: &mut (impl Policy + ?Sized)) -> (ChannelState, LinkSet) {
        let channel = sample_channel(self.network, &mut self.channel_rng);
        let decision = policy.decide(&channel, &self.ages, &mut self.policy_rng);
        debug_assert!(
            self.interference.is_feasible_unchecked(&decision),
            "policy returned infeasible set {decision}"
        );
        let tr = &mut self.trajectory;
        for (e, age) in self.ages.iter_mut().enumerate() {
            let a = *age;
            tr.age_sum[e] += a as u128;
            if decision.contains(e) && channel.is_on(e) {
                tr.successes[e] += 1;
                tr.peak_sum[e] += a as u128;
                tr.peak_square_sum[e] += (a as u128) * (a as u128);
                if a > 0 {
                    tr.peak_samples[e] += 1;
                }
                *age = 1;
            } else {
                *age = a + 1;
            }
        }
        tr.horizon += 1;
        (channel, decision)
    }

    /// Like [`advance`](Self::advance), returning a full record of the slot.
    pub fn step(&mut self, policy: &mut (impl Policy + ?Sized)) -> SlotRecord {
        let slot = self.slot();
        let ages_before = self.ages.clone();
        let (channel, decision) = self.advance(policy);
        SlotRecord { slot, channel, decision, ages_before, ages_after: self.ages.clone() }
    }

    pub fn trajectory(&self) -> Trajectory {
        let mut tr = self.trajectory.clone();
        tr.final_ages.clone_from(&self.ages);
        tr
    }

    pub fn metrics(&self) -> MetricsReport {
        MetricsReport::from_trajectory(&self.trajectory(), self.network)
    }
}

/// Simulates `horizon` slots of `policy` from zero ages.
pub fn run(
    network: &Network,
    interference: &InterferenceModel,
    policy: &mut (impl Policy + ?Sized),
    horizon: u64,
    seed: u64,
) -> Result<(Trajectory, MetricsReport)> {
    let (tr, metrics, _) = run_with_checkpoints(network, interference, policy, horizon, seed, &[])?;
    Ok((tr, metrics))
}

/// Like [`run`], also reporting the estimators over the first `t` slots for
/// every checkpoint `t ≤ horizon`.
pub fn run_with_checkpoints(
    network: &Network,
    interference: &InterferenceModel,
    policy: &mut (impl Policy + ?Sized),
    horizon: u64,
    seed: u64,
    checkpoints: &[u64],
) -> Result<(Trajectory, MetricsReport, Vec<MetricsReport>)> {
    if horizon == 0 {
        return Err(Error::Config("horizon must be at least one slot".into()));
    }
    if network.n_links() != interference.n_links() {
        return Err(Error::InvalidNetwork("network and interference model sizes differ".into()));
    }
    let mut marks: Vec<u64> = checkpoints.iter().copied().filter(|&t| t >= 1 && t <= horizon).collect();
    marks.sort_unstable();
    marks.dedup();
    let mut snapshots = Vec::with_capacity(marks.len());
    let mut next = marks.iter().peekable();

    let mut sim = Simulation::new(network, interference, seed);
    for _ in 0..horizon {
        sim.advance(policy);
        if next.peek().is_some_and(|&&t| t == sim.slot()) {
            snapshots.push(sim.metrics());
            next.next();
        }
    }
    let tr = sim.trajectory();
    let metrics = MetricsReport::from_trajectory(&tr, network);
    Ok((tr, metrics, snapshots))
}

/// `Σ U S A + A(T) − T` per link. Zero on every path started from zero ages.
pub fn check_conservation(trajectory: &Trajectory) -> Vec<i128> {
    (0..trajectory.n_links())
        .map(|e| {
            trajectory.peak_sum[e] as i128 + trajectory.final_ages[e] as i128 - trajectory.horizon as i128
        })
        .collect()
}

/// `T + 2 Σ A − Σ U S A² − 2 Σ U S A − A(T)²` per link. Zero on every path
/// started from zero ages.
pub fn check_squared_identity(trajectory: &Trajectory) -> Vec<i128> {
    (0..trajectory.n_links())
        .map(|e| {
            let a_t = trajectory.final_ages[e] as i128;
            trajectory.horizon as i128 + 2 * trajectory.age_sum[e] as i128
                - trajectory.peak_square_sum[e] as i128
                - 2 * trajectory.peak_sum[e] as i128
                - a_t * a_t
        })
        .collect()
}

/// Finite-horizon gap between the average age and its expression through
/// `B_e = A_e² + βA_e`:
///
/// `gap_e = (1/T) Σ A − [½ (1/T) Σ U S B + (1 − β)/2]`.
pub fn lemma2_check(trajectory: &Trajectory, beta: f64) -> Vec<f64> {
    let t = trajectory.horizon as f64;
    (0..trajectory.n_links())
        .map(|e| {
            let avg = trajectory.age_sum[e] as f64 / t;
            let b = trajectory.peak_square_sum[e] as f64 + beta * trajectory.peak_sum[e] as f64;
            avg - (0.5 * b / t + 0.5 * (1.0 - beta))
        })
        .collect()
}

/// Exact value of [`lemma2_check`] implied by the two telescoping identities:
/// `(A(T)² − (2 − β) A(T)) / (2T)`.
pub fn lemma2_boundary_term(trajectory: &Trajectory, beta: f64) -> Vec<f64> {
    let t = trajectory.horizon as f64;
    trajectory
        .final_ages
        .iter()
        .map(|&a| {
            let a = a as f64;
            (a * a - (2.0 - beta) * a) / (2.0 * t)
        })
        .collect()
}

/// `2 Ā^ave − Σ w − Ā^p`; nonnegative in the long run for every policy.
pub fn lemma3_check(metrics: &MetricsReport, weights: &[f64]) -> f64 {
    2.0 * metrics.weighted_average_age - weights.iter().sum::<f64>() - metrics.weighted_peak_age
}

/// Pathwise lower bound on [`lemma3_check`] for a finite horizon:
/// `Σ w_e (A_e(T)/T)(A_e(T) − 2 − Ā^p_e)`.
///
/// Follows from splitting the age path into inter-success intervals and the
/// Cauchy–Schwarz inequality; only the unfinished last interval can make the
/// slack negative.
pub fn lemma3_pathwise_floor(trajectory: &Trajectory, metrics: &MetricsReport, weights: &[f64]) -> f64 {
    let t = trajectory.horizon as f64;
    (0..trajectory.n_links())
        .map(|e| {
            let a = trajectory.final_ages[e] as f64;
            weights[e] * (a / t) * (a - 2.0 - metrics.peak_age[e])
        })
        .sum()
}

/// Every pathwise check for one trajectory.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnosticsReport {
    pub conservation_residual: Vec<i128>,
    pub squared_identity_residual: Vec<i128>,
    pub beta: f64,
    pub lemma2_gap: Vec<f64>,
    pub lemma2_boundary: Vec<f64>,
    pub lemma3_slack: f64,
    pub lemma3_floor: f64,
}

impl DiagnosticsReport {
    pub fn new(trajectory: &Trajectory, metrics: &MetricsReport, weights: &[f64], beta: f64) -> Self {
        DiagnosticsReport {
            conservation_residual: check_conservation(trajectory),
            squared_identity_residual: check_squared_identity(trajectory),
            beta,
            lemma2_gap: lemma2_check(trajectory, beta),
            lemma2_boundary: lemma2_boundary_term(trajectory, beta),
            lemma3_slack: lemma3_check(metrics, weights),
            lemma3_floor: lemma3_pathwise_floor(trajectory, metrics, weights),
        }
    }

    pub fn identities_hold(&self) -> bool {
        self.conservation_residual.iter().all(|r| *r == 0)
            && self.squared_identity_residual.iter().all(|r| *r == 0)
    }

    /// The average-age rewrite gap equals its boundary term up to rounding.
    pub fn lemma2_consistent(&self) -> bool {
        self.lemma2_gap
            .iter()
            .zip(&self.lemma2_boundary)
            .all(|(g, b)| (g - b).abs() <= 1e-9 * (1.0 + b.abs()))
    }

    /// The peak/average slack is at least its pathwise floor. Undefined (and
    /// reported as failing) when some link never succeeded.
    pub fn lemma3_consistent(&self) -> bool {
        self.lemma3_slack.is_finite() && self.lemma3_slack >= self.lemma3_floor - 1e-9 * (1.0 + self.lemma3_floor.abs())
    }
}
