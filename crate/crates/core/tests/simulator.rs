use aoi_sched::model::{sample_channel, ChannelState};
use aoi_sched::policies::{AgeBasedPolicy, NeverSchedule, Policy, PriorityPolicy, VirtualQueuePolicy};
use aoi_sched::rng::{split_seed, CHANNEL_STREAM};
use aoi_sched::simulator::{check_conservation, check_squared_identity, run, Simulation};
use aoi_sched::{InterferenceModel, LinkSet, Network, RngStream};

#[test]
fn channel_frequencies_match_gamma() {
    let net = Network::new(vec![1.0; 4], vec![0.1, 0.4, 0.75, 1.0]).unwrap();
    let mut rng = RngStream::with_stream(3, CHANNEL_STREAM);
    let draws = 200_000;
    let mut on = [0u32; 4];
    for _ in 0..draws {
        let s = sample_channel(&net, &mut rng);
        for (e, c) in on.iter_mut().enumerate() {
            *c += s.is_on(e) as u32;
        }
    }
    for (e, g) in net.gamma().iter().enumerate() {
        let f = f64::from(on[e]) / draws as f64;
        let se = (g * (1.0 - g) / draws as f64).sqrt();
        assert!((f - g).abs() <= 4.0 * se + 1e-12, "link {e}: {f} vs {g}");
    }
}

#[test]
fn age_update_follows_success_indicator() {
    let net = Network::uniform(3, 0.6).unwrap();
    let itf = InterferenceModel::k_of_n(3, 2).unwrap();
    let mut sim = Simulation::new(&net, &itf, 5);
    let mut policy = AgeBasedPolicy::new(&net, &itf, 1.0).unwrap();
    for _ in 0..5_000 {
        let rec = sim.step(&mut policy);
        assert!(itf.is_feasible(&rec.decision).unwrap());
        for e in 0..3 {
            let success = rec.decision.contains(e) && rec.channel.is_on(e);
            let want = if success { 1 } else { rec.ages_before[e] + 1 };
            assert_eq!(rec.ages_after[e], want, "slot {} link {e}", rec.slot);
        }
    }
}

#[test]
fn same_seed_gives_identical_trajectories() {
    let net = Network::good_bad(6, 2, 0.8, 0.2).unwrap();
    let itf = InterferenceModel::conflict_graph(6, vec![(0, 1), (1, 2), (3, 4)]).unwrap();
    let go = |seed| {
        let mut p = VirtualQueuePolicy::new(&net, &itf, 3.0).unwrap();
        run(&net, &itf, &mut p, 20_000, seed).unwrap().0
    };
    assert_eq!(go(9), go(9));
    assert_ne!(go(9), go(10));
}

#[test]
fn channel_draws_do_not_depend_on_policy() {
    // The channel stream is shared by every policy on the same seed.
    let net = Network::uniform(3, 0.5).unwrap();
    let itf = InterferenceModel::k_of_n(3, 1).unwrap();
    let record = |policy: &mut dyn Policy| -> Vec<ChannelState> {
        let mut sim = Simulation::new(&net, &itf, 42);
        (0..200).map(|_| sim.step(policy).channel).collect()
    };
    let a = record(&mut PriorityPolicy::identity(&itf));
    let b = record(&mut NeverSchedule);
    assert_eq!(a, b);
}

#[test]
fn identities_hold_on_random_paths() {
    for i in 0..50 {
        let seed = split_seed(77, i);
        let mut rng = RngStream::new(seed);
        let n = 1 + (rng.next_u64() % 5) as usize;
        let gamma: Vec<f64> = (0..n).map(|_| 0.05 + 0.95 * rng.uniform()).collect();
        let net = Network::new(vec![1.0; n], gamma).unwrap();
        let itf = InterferenceModel::k_of_n(n, 1 + (rng.next_u64() as usize % n)).unwrap();
        let horizon = 1 + rng.next_u64() % 3_000;
        let mut policy = AgeBasedPolicy::new(&net, &itf, 0.0).unwrap();
        let (tr, _) = run(&net, &itf, &mut policy, horizon, seed).unwrap();
        assert!(check_conservation(&tr).iter().all(|r| *r == 0));
        assert!(check_squared_identity(&tr).iter().all(|r| *r == 0));
    }
}

#[test]
fn never_scheduling_ages_linearly() {
    let net = Network::uniform(2, 1.0).unwrap();
    let itf = InterferenceModel::k_of_n(2, 2).unwrap();
    let (tr, m) = run(&net, &itf, &mut NeverSchedule, 100, 1).unwrap();
    assert_eq!(tr.final_ages, vec![100, 100]);
    assert_eq!(m.zero_success_links, vec![0, 1]);
    assert!(!m.all_links_served());
    let _ = LinkSet::empty();
}
