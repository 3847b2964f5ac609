//! Links, interference constraints and the i.i.d. ON/OFF channel.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// A set of link indices, kept sorted and free of duplicates.
///
/// The derived ordering is lexicographic on the sorted index sequence, which
/// is the tie-breaking order used by every max-weight search in the crate.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct LinkSet(Vec<usize>);

impl LinkSet {
    pub fn empty() -> Self {
        LinkSet(Vec::new())
    }

    pub fn singleton(link: usize) -> Self {
        LinkSet(vec![link])
    }

    /// Builds a set from indices already in strictly increasing order.
    pub(crate) fn from_sorted(links: Vec<usize>) -> Self {
        debug_assert!(links.windows(2).all(|w| w[0] < w[1]));
        LinkSet(links)
    }

    pub fn contains(&self, link: usize) -> bool {
        self.0.binary_search(&link).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Sum of `scores` over the members, accumulated in increasing index order.
    pub fn score(&self, scores: &[f64]) -> f64 {
        self.0.iter().map(|&e| scores[e]).sum()
    }
}

impl From<Vec<usize>> for LinkSet {
    fn from(mut links: Vec<usize>) -> Self {
        links.sort_unstable();
        links.dedup();
        LinkSet(links)
    }
}

impl From<LinkSet> for Vec<usize> {
    fn from(set: LinkSet) -> Self {
        set.0
    }
}

impl<const N: usize> From<[usize; N]> for LinkSet {
    fn from(links: [usize; N]) -> Self {
        LinkSet::from(links.to_vec())
    }
}

impl FromIterator<usize> for LinkSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        LinkSet::from(iter.into_iter().collect::<Vec<_>>())
    }
}

impl fmt::Display for LinkSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Link weights `w_e > 0` and per-slot ON probabilities `γ_e ∈ (0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawNetwork", into = "RawNetwork")]
pub struct Network {
    weights: Vec<f64>,
    gamma: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNetwork {
    weights: Vec<f64>,
    gamma: Vec<f64>,
}

impl TryFrom<RawNetwork> for Network {
    type Error = Error;

    fn try_from(raw: RawNetwork) -> Result<Self> {
        Network::new(raw.weights, raw.gamma)
    }
}

impl From<Network> for RawNetwork {
    fn from(n: Network) -> Self {
        RawNetwork { weights: n.weights, gamma: n.gamma }
    }
}

impl Network {
    pub fn new(weights: Vec<f64>, gamma: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidNetwork("a network needs at least one link".into()));
        }
        if weights.len() != gamma.len() {
            return Err(Error::InvalidNetwork(format!(
                "{} weights but {} channel probabilities",
                weights.len(),
                gamma.len()
            )));
        }
        if let Some(e) = weights.iter().position(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::InvalidNetwork(format!(
                "weight of link {e} must be positive and finite, got {}",
                weights[e]
            )));
        }
        if let Some(e) = gamma.iter().position(|g| !(*g > 0.0 && *g <= 1.0)) {
            return Err(Error::InvalidNetwork(format!(
                "ON probability of link {e} must lie in (0, 1], got {}",
                gamma[e]
            )));
        }
        Ok(Network { weights, gamma })
    }

    /// `n` links with unit weight and the same ON probability.
    pub fn uniform(n: usize, gamma: f64) -> Result<Self> {
        Network::new(vec![1.0; n], vec![gamma; n])
    }

    /// Unit-weight network whose last `n_bad` links have `gamma_bad` and the
    /// rest `gamma_good`.
    pub fn good_bad(n: usize, n_bad: usize, gamma_good: f64, gamma_bad: f64) -> Result<Self> {
        if n_bad > n {
            return Err(Error::InvalidNetwork(format!(
                "n_bad = {n_bad} exceeds the number of links {n}"
            )));
        }
        let gamma = (0..n).map(|e| if e < n - n_bad { gamma_good } else { gamma_bad }).collect();
        Network::new(vec![1.0; n], gamma)
    }

    pub fn n_links(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Serializable description of the feasible-activation collection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum InterferenceSpec {
    /// An explicit list of feasible sets. Not assumed to be subset-closed.
    ExplicitSets { sets: Vec<LinkSet> },
    /// Any set of at most `k` links is feasible.
    KOfN { k: usize },
    /// Feasible sets are the independent sets of an undirected conflict graph.
    ConflictGraph { edges: Vec<(usize, usize)> },
}

/// Validated interference structure for a network of a fixed size.
#[derive(Debug, Clone, PartialEq)]
pub struct InterferenceModel {
    n_links: usize,
    constraint: Constraint,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Constraint {
    ExplicitSets(Vec<LinkSet>),
    KOfN(usize),
    ConflictGraph(ConflictGraph),
}

/// Conflict graph stored as a dense adjacency matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ConflictGraph {
    n: usize,
    adjacent: Vec<bool>,
    edges: Vec<(usize, usize)>,
}

impl ConflictGraph {
    pub fn conflicts(&self, a: usize, b: usize) -> bool {
        self.adjacent[a * self.n + b]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

impl InterferenceModel {
    pub fn k_of_n(n_links: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n_links {
            return Err(Error::InvalidNetwork(format!(
                "K must satisfy 1 <= K <= N = {n_links}, got {k}"
            )));
        }
        Ok(InterferenceModel { n_links, constraint: Constraint::KOfN(k) })
    }

    pub fn conflict_graph(n_links: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut adjacent = vec![false; n_links * n_links];
        for &(a, b) in &edges {
            for idx in [a, b] {
                check_index(idx, n_links)?;
            }
            if a == b {
                return Err(Error::InvalidNetwork(format!("self-loop on link {a}")));
            }
            adjacent[a * n_links + b] = true;
            adjacent[b * n_links + a] = true;
        }
        Ok(InterferenceModel {
            n_links,
            constraint: Constraint::ConflictGraph(ConflictGraph { n: n_links, adjacent, edges }),
        })
    }

    pub fn explicit_sets(n_links: usize, sets: Vec<LinkSet>) -> Result<Self> {
        for set in &sets {
            for e in set.iter() {
                check_index(e, n_links)?;
            }
        }
        Ok(InterferenceModel { n_links, constraint: Constraint::ExplicitSets(sets) })
    }

    pub fn from_spec(spec: &InterferenceSpec, n_links: usize) -> Result<Self> {
        match spec {
            InterferenceSpec::ExplicitSets { sets } => Self::explicit_sets(n_links, sets.clone()),
            InterferenceSpec::KOfN { k } => Self::k_of_n(n_links, *k),
            InterferenceSpec::ConflictGraph { edges } => Self::conflict_graph(n_links, edges.clone()),
        }
    }

    pub fn to_spec(&self) -> InterferenceSpec {
        match &self.constraint {
            Constraint::ExplicitSets(sets) => InterferenceSpec::ExplicitSets { sets: sets.clone() },
            Constraint::KOfN(k) => InterferenceSpec::KOfN { k: *k },
            Constraint::ConflictGraph(g) => InterferenceSpec::ConflictGraph { edges: g.edges.clone() },
        }
    }

    pub fn n_links(&self) -> usize {
        self.n_links
    }

    pub fn constraint(&self) -> &Constraint {
        &self.constraint
    }

    /// Whether every subset of a feasible set is feasible.
    pub fn is_subset_closed(&self) -> bool {
        !matches!(self.constraint, Constraint::ExplicitSets(_))
    }

    /// Feasibility of `m`. The empty set is always feasible.
    pub fn is_feasible(&self, m: &LinkSet) -> Result<bool> {
        for e in m.iter() {
            check_index(e, self.n_links)?;
        }
        Ok(self.is_feasible_unchecked(m))
    }

    pub(crate) fn is_feasible_unchecked(&self, m: &LinkSet) -> bool {
        if m.is_empty() {
            return true;
        }
        match &self.constraint {
            Constraint::KOfN(k) => m.len() <= *k,
            Constraint::ConflictGraph(g) => {
                let links = m.as_slice();
                links
                    .iter()
                    .enumerate()
                    .all(|(i, &a)| links[i + 1..].iter().all(|&b| !g.conflicts(a, b)))
            }
            Constraint::ExplicitSets(sets) => sets.iter().any(|s| s == m),
        }
    }

    /// The lexicographically smallest feasible set that contains `link`, if any.
    pub fn covering_set(&self, link: usize) -> Option<LinkSet> {
        if link >= self.n_links {
            return None;
        }
        match &self.constraint {
            Constraint::KOfN(_) | Constraint::ConflictGraph(_) => Some(LinkSet::singleton(link)),
            Constraint::ExplicitSets(sets) => sets.iter().filter(|s| s.contains(link)).min().cloned(),
        }
    }

    /// Every nonempty feasible set, failing once more than `cap` are found.
    ///
    /// K-of-N and conflict-graph sets are listed by size, then
    /// lexicographically. Explicit sets are returned as stored (empty entries
    /// and duplicates dropped).
    pub fn enumerate_feasible_sets(&self, cap: usize) -> Result<Vec<LinkSet>> {
        let n = self.n_links;
        match &self.constraint {
            Constraint::ExplicitSets(sets) => {
                let mut out: Vec<LinkSet> = Vec::new();
                for s in sets.iter().filter(|s| !s.is_empty()) {
                    if !out.contains(s) {
                        out.push(s.clone());
                    }
                }
                if out.len() > cap {
                    return Err(Error::InstanceTooLarge { cap });
                }
                Ok(out)
            }
            Constraint::KOfN(k) => {
                let total = (1..=*k).fold(0usize, |acc, size| acc.saturating_add(binomial(n, size)));
                if total > cap {
                    return Err(Error::InstanceTooLarge { cap });
                }
                let mut out = Vec::with_capacity(total);
                for size in 1..=*k {
                    combinations(n, size, &mut |c| {
                        out.push(LinkSet::from_sorted(c.to_vec()));
                        true
                    });
                }
                Ok(out)
            }
            Constraint::ConflictGraph(g) => {
                let mut out = Vec::new();
                for size in 1..=n {
                    let mut any = false;
                    let mut overflow = false;
                    combinations(n, size, &mut |c| {
                        let independent =
                            c.iter().enumerate().all(|(i, &a)| c[i + 1..].iter().all(|&b| !g.conflicts(a, b)));
                        if independent {
                            any = true;
                            if out.len() == cap {
                                overflow = true;
                                return false;
                            }
                            out.push(LinkSet::from_sorted(c.to_vec()));
                        }
                        true
                    });
                    if overflow {
                        return Err(Error::InstanceTooLarge { cap });
                    }
                    // No independent set of this size means none larger either.
                    if !any {
                        break;
                    }
                }
                Ok(out)
            }
        }
    }
}

fn check_index(index: usize, n_links: usize) -> Result<()> {
    if index >= n_links {
        Err(Error::InvalidLinkIndex { index, n_links })
    } else {
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return usize::MAX,
        };
    }
    acc
}

/// Visits the `size`-combinations of `0..n` in lexicographic order until the
/// visitor returns `false`.
fn combinations(n: usize, size: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    if size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if !visit(&idx) {
            return;
        }
        // Rightmost position that can still advance.
        let mut i = size;
        while i > 0 && idx[i - 1] == i - 1 + n - size {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Channel state `S(t)`: one ON/OFF bit per link.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChannelState(Vec<bool>);

impl ChannelState {
    pub fn new(bits: Vec<bool>) -> Self {
        ChannelState(bits)
    }

    pub fn all_on(n: usize) -> Self {
        ChannelState(vec![true; n])
    }

    /// State whose bit `e` is bit `e` of `mask`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        ChannelState((0..n).map(|e| mask >> e & 1 == 1).collect())
    }

    pub fn is_on(&self, link: usize) -> bool {
        self.0[link]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn count_on(&self) -> usize {
        self.0.iter().filter(|b| **b).count()
    }
}

/// Draws `S(t)`: one uniform per link, in increasing link order.
pub fn sample_channel(network: &Network, rng: &mut RngStream) -> ChannelState {
    ChannelState(network.gamma().iter().map(|&g| rng.bernoulli(g)).collect())
}

/// Network plus interference, as loaded from a JSON instance document.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub network: Network,
    pub interference: InterferenceModel,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    network: Network,
    interference: InterferenceSpec,
}

impl Instance {
    pub fn new(network: Network, interference: InterferenceModel) -> Result<Self> {
        if network.n_links() != interference.n_links() {
            return Err(Error::InvalidNetwork(format!(
                "network has {} links but the interference model describes {}",
                network.n_links(),
                interference.n_links()
            )));
        }
        Ok(Instance { network, interference })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawInstance = serde_json::from_str(text)?;
        let interference = InterferenceModel::from_spec(&raw.interference, raw.network.n_links())?;
        Instance::new(raw.network, interference)
    }

    pub fn to_json(&self) -> Result<String> {
        let raw = RawInstance {
            network: self.network.clone(),
            interference: self.interference.to_spec(),
        };
        Ok(serde_json::to_string_pretty(&raw)?)
    }
}
