use aoi_sched::model::ChannelState;
use aoi_sched::policies::{
    age_score, max_weight_set, pi_a_step, pi_q_step, stationary_step, AgeBasedParams, SetMixture,
    VirtualQueueState,
};
use aoi_sched::{InterferenceModel, LinkSet, Network, RngStream};
use proptest::prelude::*;

/// Every subset of `0..n` as a sorted link set, by brute force.
fn all_subsets(n: usize) -> Vec<LinkSet> {
    (0u32..1 << n).map(|mask| (0..n).filter(|e| mask >> e & 1 == 1).collect()).collect()
}

/// Exhaustive argmax: highest total, ties to the lexicographically smallest
/// set. Only sets whose links all have positive scores compete, which is how
/// the kernel treats zero-score links.
fn oracle_argmax(itf: &InterferenceModel, scores: &[f64]) -> (LinkSet, f64) {
    let mut best = (LinkSet::empty(), 0.0);
    for set in all_subsets(itf.n_links()) {
        if !itf.is_feasible(&set).unwrap() || set.iter().any(|e| scores[e] == 0.0) {
            continue;
        }
        let total: f64 = set.iter().map(|e| scores[e]).sum();
        if total > best.1 || (total == best.1 && set < best.0) {
            best = (set, total);
        }
    }
    best
}

fn interference_strategy() -> impl Strategy<Value = InterferenceModel> {
    (2usize..=12).prop_flat_map(|n| {
        let kofn = (1..=n).prop_map(move |k| InterferenceModel::k_of_n(n, k).unwrap());
        let graph = proptest::collection::vec((0..n, 0..n), 0..2 * n).prop_map(move |pairs| {
            let edges = pairs.into_iter().filter(|(a, b)| a != b).collect();
            InterferenceModel::conflict_graph(n, edges).unwrap()
        });
        prop_oneof![kofn, graph]
    })
}

fn integer_scores(n: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(0u32..6, n).prop_map(|v| v.into_iter().map(f64::from).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn max_weight_matches_exhaustive_search(
        (itf, scores) in interference_strategy().prop_flat_map(|itf| {
            let n = itf.n_links();
            (Just(itf), integer_scores(n))
        })
    ) {
        let got = max_weight_set(&itf, &scores);
        let (want, total) = oracle_argmax(&itf, &scores);
        prop_assert!(itf.is_feasible(&got).unwrap());
        prop_assert_eq!(got.score(&scores), total);
        prop_assert_eq!(got, want);
    }

    #[test]
    fn max_weight_is_scale_invariant(
        (itf, scores) in interference_strategy().prop_flat_map(|itf| {
            let n = itf.n_links();
            (Just(itf), integer_scores(n))
        }),
        scale in prop_oneof![Just(0.5), Just(2.0), Just(1024.0)],
    ) {
        let scaled: Vec<f64> = scores.iter().map(|s| s * scale).collect();
        prop_assert_eq!(max_weight_set(&itf, &scores), max_weight_set(&itf, &scaled));
    }

    #[test]
    fn feasibility_agrees_with_enumeration(itf in interference_strategy()) {
        let listed = itf.enumerate_feasible_sets(1 << 12).unwrap();
        for set in all_subsets(itf.n_links()) {
            prop_assert_eq!(itf.is_feasible(&set).unwrap(), set.is_empty() || listed.contains(&set));
        }
    }

    #[test]
    fn virtual_queues_stay_at_least_one(
        n in 1usize..6,
        v in 0.01f64..100.0,
        masks in proptest::collection::vec(any::<u64>(), 1..200),
    ) {
        let net = Network::uniform(n, 0.5).unwrap();
        let itf = InterferenceModel::k_of_n(n, 1).unwrap();
        let mut state = VirtualQueueState::new(n, v).unwrap();
        for mask in masks {
            let (set, next) = pi_q_step(&state, &ChannelState::from_mask(mask, n), &net, &itf);
            prop_assert!(itf.is_feasible(&set).unwrap());
            prop_assert!(next.queues().iter().all(|q| *q >= 1.0));
            state = next;
        }
    }

    #[test]
    fn age_based_with_equal_ages_ranks_by_weight(
        weights in proptest::collection::vec(1u32..10, 2..8),
        mask in any::<u64>(),
        age in 1u64..50,
        k in 1usize..4,
    ) {
        let n = weights.len();
        let w: Vec<f64> = weights.into_iter().map(f64::from).collect();
        let net = Network::new(w.clone(), vec![0.5; n]).unwrap();
        let itf = InterferenceModel::k_of_n(n, k.min(n)).unwrap();
        let channel = ChannelState::from_mask(mask, n);
        let got = pi_a_step(&vec![age; n], &channel, &net, &itf, AgeBasedParams { beta: 0.0 });
        let ws: Vec<f64> = (0..n).map(|e| if channel.is_on(e) { w[e] } else { 0.0 }).collect();
        prop_assert_eq!(got, max_weight_set(&itf, &ws));
    }

    #[test]
    fn age_score_is_never_negative(w in 0.0f64..10.0, age in 0u64..1000, beta in -50.0f64..50.0) {
        prop_assert!(age_score(w, true, age, beta) >= 0.0);
        prop_assert_eq!(age_score(w, false, age, beta), 0.0);
    }
}

#[test]
fn max_weight_on_listed_sets_picks_best_listed() {
    let itf = InterferenceModel::explicit_sets(3, vec![[0, 1].into(), [2].into()]).unwrap();
    assert_eq!(max_weight_set(&itf, &[1.0, 1.0, 1.5]), LinkSet::from([0, 1]));
    assert_eq!(max_weight_set(&itf, &[1.0, 0.0, 1.5]), LinkSet::from([2]));
    assert_eq!(max_weight_set(&itf, &[0.0, 0.0, 0.0]), LinkSet::empty());
}

#[test]
fn stationary_frequencies_match_mixture() {
    let itf = InterferenceModel::k_of_n(3, 2).unwrap();
    let entries = vec![(LinkSet::from([0, 1]), 0.3), (LinkSet::from([2]), 0.5)];
    let mixture = SetMixture::new(&itf, entries).unwrap();
    let mut rng = RngStream::new(11);
    let draws = 100_000;
    let mut hits = [0u32; 3];
    for _ in 0..draws {
        for e in stationary_step(&mixture, &mut rng).iter() {
            hits[e] += 1;
        }
    }
    for (e, want) in [0.3, 0.3, 0.5].into_iter().enumerate() {
        let f = f64::from(hits[e]) / draws as f64;
        let se = (want * (1.0 - want) / draws as f64).sqrt();
        assert!((f - want).abs() < 4.0 * se, "link {e}: {f} vs {want}");
    }
}
