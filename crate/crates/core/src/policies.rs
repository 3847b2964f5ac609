//! Scheduling policies.
//!
//! Every channel-aware policy here reduces to one kernel, [`max_weight_set`]:
//! pick the feasible activation set with the largest total score. The
//! virtual-queue policy scores a link by `w_e Q_e S_e`, the age-based policy
//! by `w_e S_e (A_e^2 + beta A_e)`, and an S-only direction rule by `c_e S_e`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ChannelState, Constraint, ConflictGraph, InterferenceModel, LinkSet, Network};
use crate::rng::RngStream;

/// Feasible set maximizing `Σ_{e∈m} scores_e`.
///
/// Ties go to the lexicographically smallest index set. Links with score 0
/// never appear in the result when the constraint is subset-closed; the empty
/// set is returned when every score is 0. For explicit (not subset-closed) set
/// lists the result is one of the listed sets, or empty if none has a positive
/// total.
///
/// K-of-N is a top-K selection. Conflict graphs and explicit lists are
/// searched exhaustively, which is exponential in the worst case.
pub fn max_weight_set(interference: &InterferenceModel, scores: &[f64]) -> LinkSet {
    debug_assert_eq!(scores.len(), interference.n_links());
    debug_assert!(scores.iter().all(|s| *s >= 0.0), "scores must be nonnegative");
    match interference.constraint() {
        Constraint::KOfN(k) => top_k(scores, *k),
        Constraint::ConflictGraph(g) => max_weight_independent_set(g, scores),
        Constraint::ExplicitSets(sets) => best_listed_set(sets, scores),
    }
}

fn top_k(scores: &[f64], k: usize) -> LinkSet {
    let mut positive: Vec<usize> = (0..scores.len()).filter(|&e| scores[e] > 0.0).collect();
    if positive.len() > k {
        positive.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
        positive.truncate(k);
        positive.sort_unstable();
    }
    LinkSet::from_sorted(positive)
}

fn best_listed_set(sets: &[LinkSet], scores: &[f64]) -> LinkSet {
    let mut best: Option<(&LinkSet, f64)> = None;
    for set in sets {
        let total = set.score(scores);
        if total <= 0.0 {
            continue;
        }
        best = match best {
            Some((b, bt)) if bt > total || (bt == total && b <= set) => Some((b, bt)),
            _ => Some((set, total)),
        };
    }
    best.map(|(s, _)| s.clone()).unwrap_or_default()
}

/// Branch and bound over positive-score vertices.
///
/// Candidates are extended in increasing index order and each partial set is
/// scored before its extensions, so sets are visited in lexicographic order
/// and a strict-improvement rule keeps the smallest maximizer.
fn max_weight_independent_set(graph: &ConflictGraph, scores: &[f64]) -> LinkSet {
    let candidates: Vec<usize> = (0..scores.len()).filter(|&e| scores[e] > 0.0).collect();
    let mut suffix = vec![0.0; candidates.len() + 1];
    for i in (0..candidates.len()).rev() {
        suffix[i] = suffix[i + 1] + scores[candidates[i]];
    }

    struct Search<'a> {
        graph: &'a ConflictGraph,
        scores: &'a [f64],
        candidates: &'a [usize],
        suffix: &'a [f64],
        current: Vec<usize>,
        best: Vec<usize>,
        best_total: f64,
    }

    impl Search<'_> {
        fn extend(&mut self, start: usize, total: f64) {
            for i in start..self.candidates.len() {
                // Bounds shrink with i, so nothing further can beat the incumbent.
                let bound = total + self.suffix[i];
                if bound <= self.best_total * (1.0 + 1e-12) {
                    return;
                }
                let v = self.candidates[i];
                if self.current.iter().any(|&u| self.graph.conflicts(u, v)) {
                    continue;
                }
                self.current.push(v);
                let next = total + self.scores[v];
                if next > self.best_total {
                    self.best_total = next;
                    self.best.clone_from(&self.current);
                }
                self.extend(i + 1, next);
                self.current.pop();
            }
        }
    }

    let mut search = Search {
        graph,
        scores,
        candidates: &candidates,
        suffix: &suffix,
        current: Vec::with_capacity(candidates.len()),
        best: Vec::new(),
        best_total: 0.0,
    };
    search.extend(0, 0.0);
    LinkSet::from_sorted(search.best)
}

/// Common interface the simulator drives once per slot.
///
/// A policy sees the current channel state and age vector, may keep its own
/// state, and may draw from the policy random stream. It must return a
/// feasible set.
pub trait Policy {
    fn decide(&mut self, channel: &ChannelState, ages: &[u64], rng: &mut RngStream) -> LinkSet;
}

impl<P: Policy + ?Sized> Policy for Box<P> {
    fn decide(&mut self, channel: &ChannelState, ages: &[u64], rng: &mut RngStream) -> LinkSet {
        (**self).decide(channel, ages, rng)
    }
}

/// Virtual queues `Q_e(t) ≥ 1` and the rate parameter `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct VirtualQueueState {
    q: Vec<f64>,
    v: f64,
}

impl VirtualQueueState {
    /// All queues start at 1.
    pub fn new(n_links: usize, v: f64) -> Result<Self> {
        Self::with_queues(vec![1.0; n_links], v)
    }

    pub fn with_queues(q: Vec<f64>, v: f64) -> Result<Self> {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::Config(format!("V must be positive and finite, got {v}")));
        }
        if let Some(e) = q.iter().position(|x| x.is_nan() || *x < 1.0) {
            return Err(Error::Config(format!("virtual queue {e} must be at least 1, got {}", q[e])));
        }
        Ok(VirtualQueueState { q, v })
    }

    pub fn queues(&self) -> &[f64] {
        &self.q
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    fn step_in_place(
        &mut self,
        channel: &ChannelState,
        network: &Network,
        interference: &InterferenceModel,
    ) -> LinkSet {
        let scores: Vec<f64> = (0..self.q.len())
            .map(|e| if channel.is_on(e) { network.weights()[e] * self.q[e] } else { 0.0 })
            .collect();
        let decision = max_weight_set(interference, &scores);
        for (e, q) in self.q.iter_mut().enumerate() {
            let served = (decision.contains(e) && channel.is_on(e)) as u8 as f64;
            *q = (*q + (self.v / *q).sqrt() - served).max(1.0);
        }
        decision
    }
}

/// One slot of the virtual-queue policy: schedule the max-weight set under
/// `w_e Q_e S_e`, then apply `Q_e ← max(Q_e + sqrt(V/Q_e) − U_e S_e, 1)`.
pub fn pi_q_step(
    state: &VirtualQueueState,
    channel: &ChannelState,
    network: &Network,
    interference: &InterferenceModel,
) -> (LinkSet, VirtualQueueState) {
    let mut next = state.clone();
    let decision = next.step_in_place(channel, network, interference);
    (decision, next)
}

#[derive(Debug, Clone)]
pub struct VirtualQueuePolicy {
    network: Network,
    interference: InterferenceModel,
    state: VirtualQueueState,
}

impl VirtualQueuePolicy {
    pub fn new(network: &Network, interference: &InterferenceModel, v: f64) -> Result<Self> {
        Ok(VirtualQueuePolicy {
            network: network.clone(),
            interference: interference.clone(),
            state: VirtualQueueState::new(network.n_links(), v)?,
        })
    }

    pub fn state(&self) -> &VirtualQueueState {
        &self.state
    }
}

impl Policy for VirtualQueuePolicy {
    fn decide(&mut self, channel: &ChannelState, _ages: &[u64], _rng: &mut RngStream) -> LinkSet {
        self.state.step_in_place(channel, &self.network, &self.interference)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgeBasedParams {
    pub beta: f64,
}

/// Per-link score of the age-based policy, floored at zero.
pub fn age_score(weight: f64, on: bool, age: u64, beta: f64) -> f64 {
    if !on {
        return 0.0;
    }
    let a = age as f64;
    weight * (a * a + beta * a).max(0.0)
}

/// One slot of the age-based policy: the max-weight set under
/// `w_e S_e max(A_e^2 + beta A_e, 0)`.
pub fn pi_a_step(
    ages: &[u64],
    channel: &ChannelState,
    network: &Network,
    interference: &InterferenceModel,
    params: AgeBasedParams,
) -> LinkSet {
    let scores: Vec<f64> = ages
        .iter()
        .enumerate()
        .map(|(e, &a)| age_score(network.weights()[e], channel.is_on(e), a, params.beta))
        .collect();
    max_weight_set(interference, &scores)
}

#[derive(Debug, Clone)]
pub struct AgeBasedPolicy {
    network: Network,
    interference: InterferenceModel,
    params: AgeBasedParams,
}

impl AgeBasedPolicy {
    pub fn new(network: &Network, interference: &InterferenceModel, beta: f64) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::Config(format!("beta must be finite, got {beta}")));
        }
        Ok(AgeBasedPolicy {
            network: network.clone(),
            interference: interference.clone(),
            params: AgeBasedParams { beta },
        })
    }
}

impl Policy for AgeBasedPolicy {
    fn decide(&mut self, channel: &ChannelState, ages: &[u64], _rng: &mut RngStream) -> LinkSet {
        pi_a_step(ages, channel, &self.network, &self.interference, self.params)
    }
}

/// Distribution over feasible sets; the remaining mass idles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetMixture {
    n_links: usize,
    entries: Vec<(LinkSet, f64)>,
}

impl SetMixture {
    pub fn new(
        interference: &InterferenceModel,
        entries: Vec<(LinkSet, f64)>,
    ) -> Result<Self> {
        let mut total = 0.0;
        for (set, x) in &entries {
            if !interference.is_feasible(set)? {
                return Err(Error::Config(format!("mixture set {set} is not feasible")));
            }
            if !(x.is_finite() && *x >= 0.0) {
                return Err(Error::Config(format!("mixture probability {x} for {set} is invalid")));
            }
            total += x;
        }
        if total > 1.0 + 1e-9 {
            return Err(Error::Config(format!("mixture probabilities sum to {total} > 1")));
        }
        Ok(SetMixture { n_links: interference.n_links(), entries })
    }

    pub fn empty(n_links: usize) -> Self {
        SetMixture { n_links, entries: Vec::new() }
    }

    pub fn n_links(&self) -> usize {
        self.n_links
    }

    pub fn entries(&self) -> &[(LinkSet, f64)] {
        &self.entries
    }

    pub fn idle_probability(&self) -> f64 {
        (1.0 - self.entries.iter().map(|(_, x)| x).sum::<f64>()).max(0.0)
    }
}

/// Activation frequencies `f_e = Σ_{m∋e} x_m`.
pub fn marginals(mixture: &SetMixture) -> Vec<f64> {
    let mut f = vec![0.0; mixture.n_links];
    for (set, x) in &mixture.entries {
        for e in set.iter() {
            f[e] += x;
        }
    }
    f
}

/// Draws one set from the mixture using a single uniform.
pub fn stationary_step(mixture: &SetMixture, rng: &mut RngStream) -> LinkSet {
    let u = rng.uniform();
    let mut acc = 0.0;
    for (set, x) in &mixture.entries {
        acc += x;
        if u < acc {
            return set.clone();
        }
    }
    LinkSet::empty()
}

/// Channel-blind policy that samples from a fixed [`SetMixture`] every slot.
#[derive(Debug, Clone)]
pub struct StationaryPolicy {
    mixture: SetMixture,
}

impl StationaryPolicy {
    pub fn new(mixture: SetMixture) -> Self {
        StationaryPolicy { mixture }
    }

    pub fn mixture(&self) -> &SetMixture {
        &self.mixture
    }
}

impl Policy for StationaryPolicy {
    fn decide(&mut self, _channel: &ChannelState, _ages: &[u64], rng: &mut RngStream) -> LinkSet {
        stationary_step(&self.mixture, rng)
    }
}

/// A deterministic per-state rule: max-weight under `c_e S_e`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectionRule {
    pub direction: Vec<f64>,
    pub weight: f64,
}

impl DirectionRule {
    pub fn apply(&self, interference: &InterferenceModel, channel: &ChannelState) -> LinkSet {
        let scores: Vec<f64> = self
            .direction
            .iter()
            .enumerate()
            .map(|(e, c)| if channel.is_on(e) { *c } else { 0.0 })
            .collect();
        max_weight_set(interference, &scores)
    }
}

/// Randomized policy that depends only on the current channel state, stored
/// as a mixture of direction rules.
#[derive(Debug, Clone)]
pub struct SOnlyPolicy {
    interference: InterferenceModel,
    rules: Vec<DirectionRule>,
    cumulative: Vec<f64>,
}

impl SOnlyPolicy {
    pub fn new(interference: &InterferenceModel, rules: Vec<DirectionRule>) -> Result<Self> {
        if rules.is_empty() {
            return Err(Error::Config("an S-only policy needs at least one rule".into()));
        }
        let n = interference.n_links();
        for rule in &rules {
            if rule.direction.len() != n {
                return Err(Error::Config(format!(
                    "direction has {} entries for {n} links",
                    rule.direction.len()
                )));
            }
            if rule.direction.iter().any(|c| !(c.is_finite() && *c >= 0.0)) {
                return Err(Error::Config("directions must be nonnegative and finite".into()));
            }
            if !(rule.weight.is_finite() && rule.weight >= 0.0) {
                return Err(Error::Config(format!("rule weight {} is invalid", rule.weight)));
            }
        }
        let total: f64 = rules.iter().map(|r| r.weight).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::Config(format!("rule weights sum to {total}, expected 1")));
        }
        let cumulative = rules
            .iter()
            .scan(0.0, |acc, r| {
                *acc += r.weight;
                Some(*acc)
            })
            .collect();
        Ok(SOnlyPolicy { interference: interference.clone(), rules, cumulative })
    }

    pub fn rules(&self) -> &[DirectionRule] {
        &self.rules
    }

    pub fn interference(&self) -> &InterferenceModel {
        &self.interference
    }

    fn pick(&self, u: f64) -> &DirectionRule {
        let i = self.cumulative.partition_point(|&c| c <= u);
        &self.rules[i.min(self.rules.len() - 1)]
    }
}

/// Samples a rule by weight, then applies it to the current channel state.
pub fn s_only_step(policy: &SOnlyPolicy, channel: &ChannelState, rng: &mut RngStream) -> LinkSet {
    let rule = policy.pick(rng.uniform());
    rule.apply(&policy.interference, channel)
}

impl Policy for SOnlyPolicy {
    fn decide(&mut self, channel: &ChannelState, _ages: &[u64], rng: &mut RngStream) -> LinkSet {
        s_only_step(self, channel, rng)
    }
}

/// Greedy fixed-priority schedule.
///
/// ON links are added in priority order while the set stays feasible; any
/// remaining room is filled with OFF links in the same order. The OFF links
/// cannot succeed, so the fill only makes the decision total.
pub fn priority_step(order: &[usize], channel: &ChannelState, interference: &InterferenceModel) -> LinkSet {
    let mut chosen: Vec<usize> = Vec::new();
    for pass_on in [true, false] {
        for &e in order.iter().filter(|&&e| channel.is_on(e) == pass_on) {
            let mut trial = chosen.clone();
            trial.push(e);
            let trial = LinkSet::from(trial);
            if interference.is_feasible_unchecked(&trial) {
                chosen = trial.into();
            }
        }
    }
    LinkSet::from(chosen)
}

#[derive(Debug, Clone)]
pub struct PriorityPolicy {
    order: Vec<usize>,
    interference: InterferenceModel,
}

impl PriorityPolicy {
    pub fn new(order: Vec<usize>, interference: &InterferenceModel) -> Result<Self> {
        let n = interference.n_links();
        let mut seen = vec![false; n];
        for &e in &order {
            if e >= n || std::mem::replace(&mut seen[e], true) {
                return Err(Error::Config(format!("priority order {order:?} is not a permutation of 0..{n}")));
            }
        }
        if order.len() != n {
            return Err(Error::Config(format!("priority order {order:?} is not a permutation of 0..{n}")));
        }
        Ok(PriorityPolicy { order, interference: interference.clone() })
    }

    /// Priority by increasing link index.
    pub fn identity(interference: &InterferenceModel) -> Self {
        PriorityPolicy { order: (0..interference.n_links()).collect(), interference: interference.clone() }
    }
}

impl Policy for PriorityPolicy {
    fn decide(&mut self, channel: &ChannelState, _ages: &[u64], _rng: &mut RngStream) -> LinkSet {
        priority_step(&self.order, channel, &self.interference)
    }
}

/// Never activates anything.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeverSchedule;

impl Policy for NeverSchedule {
    fn decide(&mut self, _channel: &ChannelState, _ages: &[u64], _rng: &mut RngStream) -> LinkSet {
        LinkSet::empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn kofn(n: usize, k: usize) -> InterferenceModel {
        InterferenceModel::k_of_n(n, k).unwrap()
    }

    fn triangle() -> InterferenceModel {
        InterferenceModel::conflict_graph(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn on(bits: &[u8]) -> ChannelState {
        ChannelState::new(bits.iter().map(|b| *b == 1).collect())
    }

    #[test]
    fn max_weight_examples() {
        assert_eq!(max_weight_set(&kofn(3, 2), &[3.0, 1.0, 2.0]), LinkSet::from([0, 2]));
        assert_eq!(max_weight_set(&triangle(), &[1.0, 1.0, 5.0]), LinkSet::from([2]));
        let explicit = InterferenceModel::explicit_sets(
            2,
            vec![LinkSet::from([0]), LinkSet::from([1]), LinkSet::from([0, 1])],
        )
        .unwrap();
        assert_eq!(max_weight_set(&explicit, &[2.0, 3.0]), LinkSet::from([0, 1]));
    }

    #[test]
    fn max_weight_ties_and_zeros() {
        assert_eq!(max_weight_set(&kofn(3, 1), &[2.0, 2.0, 2.0]), LinkSet::from([0]));
        assert_eq!(max_weight_set(&kofn(3, 3), &[0.0, 2.0, 0.0]), LinkSet::from([1]));
        assert_eq!(max_weight_set(&kofn(3, 2), &[0.0, 0.0, 0.0]), LinkSet::empty());
        // path 0-1-2: {0,2} and {1} tie at 2, {0,2} is lexicographically smaller
        let path = InterferenceModel::conflict_graph(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(max_weight_set(&path, &[1.0, 2.0, 1.0]), LinkSet::from([0, 2]));
        assert_eq!(max_weight_set(&path, &[0.0, 0.0, 0.0]), LinkSet::empty());
    }

    #[test]
    fn pi_q_examples() {
        let net1 = Network::uniform(1, 1.0).unwrap();
        let k1 = kofn(1, 1);
        let state = VirtualQueueState::new(1, 1.0).unwrap();
        let (d, next) = pi_q_step(&state, &on(&[1]), &net1, &k1);
        assert_eq!(d, LinkSet::from([0]));
        assert_eq!(next.queues(), &[1.0]);
        let (d, next) = pi_q_step(&state, &on(&[0]), &net1, &k1);
        assert_eq!(d, LinkSet::empty());
        assert_eq!(next.queues(), &[2.0]);

        let net2 = Network::uniform(2, 0.5).unwrap();
        let state = VirtualQueueState::with_queues(vec![2.0, 3.0], 1.0).unwrap();
        let (d, next) = pi_q_step(&state, &on(&[1, 1]), &net2, &kofn(2, 1));
        assert_eq!(d, LinkSet::from([1]));
        assert_abs_diff_eq!(next.queues()[0], 2.70711, epsilon = 5e-6);
        assert_abs_diff_eq!(next.queues()[1], 2.57735, epsilon = 5e-6);
    }

    #[test]
    fn pi_q_rejects_bad_state() {
        assert!(VirtualQueueState::new(2, 0.0).is_err());
        assert!(VirtualQueueState::with_queues(vec![0.5], 1.0).is_err());
    }

    #[test]
    fn pi_a_examples() {
        let net = Network::uniform(2, 0.5).unwrap();
        let k1 = kofn(2, 1);
        let d = pi_a_step(&[3, 2], &on(&[1, 1]), &net, &k1, AgeBasedParams { beta: 1.0 });
        assert_eq!(d, LinkSet::from([0]));
        let d = pi_a_step(&[5, 5], &on(&[0, 1]), &net, &k1, AgeBasedParams { beta: 0.0 });
        assert_eq!(d, LinkSet::from([1]));
        let d = pi_a_step(&[3, 2], &on(&[1, 1]), &net, &k1, AgeBasedParams { beta: -10.0 });
        assert_eq!(d, LinkSet::empty());
    }

    #[test]
    fn marginals_examples() {
        let k1 = kofn(2, 1);
        let m = SetMixture::new(&k1, vec![(LinkSet::from([0]), 0.5), (LinkSet::from([1]), 0.5)]).unwrap();
        assert_eq!(marginals(&m), vec![0.5, 0.5]);
        let k2 = kofn(2, 2);
        let m = SetMixture::new(&k2, vec![(LinkSet::from([0, 1]), 0.3), (LinkSet::from([0]), 0.2)]).unwrap();
        let f = marginals(&m);
        assert_abs_diff_eq!(f[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(f[1], 0.3, epsilon = 1e-15);
        assert_eq!(marginals(&SetMixture::empty(3)), vec![0.0; 3]);
    }

    #[test]
    fn mixture_validation() {
        let k1 = kofn(2, 1);
        assert!(SetMixture::new(&k1, vec![(LinkSet::from([0, 1]), 0.5)]).is_err());
        assert!(SetMixture::new(&k1, vec![(LinkSet::from([0]), 0.7), (LinkSet::from([1]), 0.7)]).is_err());
        assert!(SetMixture::new(&k1, vec![(LinkSet::from([0]), -0.1)]).is_err());
    }

    #[test]
    fn stationary_examples() {
        let k1 = kofn(2, 1);
        let mut rng = RngStream::new(5);
        let always = SetMixture::new(&k1, vec![(LinkSet::from([0]), 1.0)]).unwrap();
        let empty = SetMixture::empty(2);
        for _ in 0..1000 {
            assert_eq!(stationary_step(&always, &mut rng), LinkSet::from([0]));
            assert_eq!(stationary_step(&empty, &mut rng), LinkSet::empty());
        }
        let half = SetMixture::new(&k1, vec![(LinkSet::from([0]), 0.5), (LinkSet::from([1]), 0.5)]).unwrap();
        let draws = 100_000;
        let zeros = (0..draws).filter(|_| stationary_step(&half, &mut rng) == LinkSet::from([0])).count();
        assert!((zeros as f64 / draws as f64 - 0.5).abs() < 0.01);
    }

    #[test]
    fn s_only_examples() {
        let k1 = kofn(2, 1);
        let rule = |c: Vec<f64>, w: f64| DirectionRule { direction: c, weight: w };
        let single = SOnlyPolicy::new(&k1, vec![rule(vec![1.0, 0.0], 1.0)]).unwrap();
        let mut rng = RngStream::new(8);
        assert_eq!(s_only_step(&single, &on(&[1, 1]), &mut rng), LinkSet::from([0]));
        assert_eq!(s_only_step(&single, &on(&[0, 1]), &mut rng), LinkSet::empty());

        let two = SOnlyPolicy::new(&k1, vec![rule(vec![1.0, 0.0], 0.5), rule(vec![0.0, 1.0], 0.5)]).unwrap();
        let draws = 100_000;
        let zeros = (0..draws)
            .filter(|_| s_only_step(&two, &on(&[1, 1]), &mut rng) == LinkSet::from([0]))
            .count();
        assert!((zeros as f64 / draws as f64 - 0.5).abs() < 0.01);

        assert!(SOnlyPolicy::new(&k1, vec![rule(vec![1.0, 0.0], 0.4)]).is_err());
        assert!(SOnlyPolicy::new(&k1, vec![rule(vec![1.0], 1.0)]).is_err());
    }

    #[test]
    fn priority_examples() {
        let k1 = kofn(2, 1);
        assert_eq!(priority_step(&[0, 1], &on(&[1, 0]), &k1), LinkSet::from([0]));
        assert_eq!(priority_step(&[0, 1], &on(&[0, 1]), &k1), LinkSet::from([1]));
        assert_eq!(priority_step(&[0, 1], &on(&[0, 0]), &k1), LinkSet::from([0]));
        // ON links first, then fill with OFF ones
        assert_eq!(priority_step(&[2, 0, 1], &on(&[0, 1, 0]), &kofn(3, 2)), LinkSet::from([1, 2]));
        assert!(PriorityPolicy::new(vec![0, 0], &k1).is_err());
        assert!(PriorityPolicy::new(vec![0], &k1).is_err());
    }
}
