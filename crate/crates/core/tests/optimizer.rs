use aoi_sched::optimizer::{
    average_age_lower_bound, c1, c2, solve_kofn_closed_form, solve_known_peak, solve_unknown_peak,
    SolverSettings, StepRule,
};
use aoi_sched::policies::marginals;
use aoi_sched::rng::split_seed;
use aoi_sched::{InterferenceModel, Network, RngStream};

fn random_network(rng: &mut RngStream, n: usize) -> Network {
    let w = (0..n).map(|_| 0.2 + 2.0 * rng.uniform()).collect();
    let g = (0..n).map(|_| 0.05 + 0.95 * rng.uniform()).collect();
    Network::new(w, g).unwrap()
}

#[test]
fn unknown_peak_matches_water_filling_on_k_of_n() {
    for i in 0..20 {
        let mut rng = RngStream::new(split_seed(5, i));
        let n = 2 + (rng.next_u64() % 9) as usize;
        let k = 1 + (rng.next_u64() as usize % n);
        let net = random_network(&mut rng, n);
        let itf = InterferenceModel::k_of_n(n, k).unwrap();
        let sol = solve_unknown_peak(&net, &itf, &SolverSettings::default()).unwrap();
        let (f, value) = solve_kofn_closed_form(&net, k).unwrap();
        assert!((sol.value - value).abs() <= 1e-4 * value, "trial {i}: {} vs {value}", sol.value);
        for (a, b) in sol.frequencies.iter().zip(&f) {
            assert!((a - b).abs() < 1e-3, "trial {i}: {a} vs {b}");
        }
        let m = marginals(&sol.mixture);
        for (a, b) in m.iter().zip(&sol.frequencies) {
            assert!((a - b).abs() < 1e-9);
        }
    }
}

#[test]
fn objective_trace_never_increases() {
    let mut rng = RngStream::new(8);
    let net = random_network(&mut rng, 7);
    let itf = InterferenceModel::conflict_graph(7, vec![(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 0)]).unwrap();
    // The plain 2/(k+2) rule converges sublinearly; a loose tolerance suffices here.
    for (step_rule, gap_tolerance) in [(StepRule::Pairwise, 1e-8), (StepRule::Standard, 1e-2)] {
        let settings = SolverSettings { step_rule, gap_tolerance, ..SolverSettings::default() };
        let sol = solve_unknown_peak(&net, &itf, &settings).unwrap();
        for w in sol.trace.windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-12), "{step_rule:?}: {} -> {}", w[0], w[1]);
        }
        let known = solve_known_peak(&net, &itf, &settings).unwrap();
        for w in known.trace.windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-12));
        }
    }
}

#[test]
fn knowing_the_channel_never_hurts() {
    for i in 0..15 {
        let mut rng = RngStream::new(split_seed(6, i));
        let n = 2 + (rng.next_u64() % 5) as usize;
        let net = random_network(&mut rng, n);
        let itf = InterferenceModel::k_of_n(n, 1 + (rng.next_u64() as usize % n)).unwrap();
        let s = SolverSettings::default();
        let unknown = solve_unknown_peak(&net, &itf, &s).unwrap();
        let known = solve_known_peak(&net, &itf, &s).unwrap();
        assert!(known.value <= unknown.value * (1.0 + 1e-6), "trial {i}");
        let lb = average_age_lower_bound(&known.success_rates, net.weights());
        assert!(lb <= known.value + net.total_weight());
    }
}

#[test]
fn c1_and_c2_match_their_polynomials() {
    let mut rng = RngStream::new(99);
    for _ in 0..100 {
        let b = -20.0 + 40.0 * rng.uniform();
        let want1 = 2.5 + b / 2.0 - b * b / 4.0;
        let want2 = 2.0 + b - b * b / 2.0;
        assert!((c1(b) - want1).abs() <= 1e-12 * (1.0 + want1.abs()));
        assert!((c2(b) - want2).abs() <= 1e-12 * (1.0 + want2.abs()));
    }
}
