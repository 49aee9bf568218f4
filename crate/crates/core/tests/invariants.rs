use proptest::prelude::*;

use nisqlim::bounds::{decay_bound, ent_bound_1d, plateau_curve, t_star_1d, CurveTopology};
use nisqlim::dmsim::{apply_depolarizing_all, evolve, DensityMatrix, EvolveOptions, NoiseStrength};
use nisqlim::entanglement::{er_upper_via_max_mixed, er_upper_via_search, SearchConfig};
use nisqlim::infotheory::{
    distance_to_max_mixed, mutual_information, relative_entropy, subsystem_entropy, von_neumann_entropy, Bipartition,
};
use nisqlim::lightcone::depth_entanglement_bound;
use nisqlim::random::{random_chain_circuit, rng, wishart_state};
use nisqlim::shearer::{shearer_slack, SubsetFamily};

fn noise() -> impl Strategy<Value = NoiseStrength> {
    (0.0..=1.0f64).prop_map(|p| NoiseStrength::new(p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn distance_never_exceeds_decay(seed in any::<u64>(), n in 1usize..=5, depth in 0usize..=8, p in noise()) {
        let circuit = random_chain_circuit(n, depth, 1.0, &mut rng(seed));
        let run = evolve(&circuit, p, EvolveOptions::recording()).unwrap();
        for (t, rho) in run.trajectory.iter().enumerate() {
            prop_assert!(distance_to_max_mixed(rho) <= decay_bound(n, p, t + 1) + 1e-7);
        }
    }

    #[test]
    fn noise_raises_entropy_by_a_fraction(seed in any::<u64>(), n in 1usize..=3, p in noise()) {
        let rho = wishart_state(n, &mut rng(seed));
        let after = von_neumann_entropy(&apply_depolarizing_all(&rho, p));
        let floor = p.survival() * von_neumann_entropy(&rho) + p.p() * n as f64;
        prop_assert!(after >= floor - 1e-7);
    }

    #[test]
    fn relative_entropy_to_max_mixed_is_entropy_gap(seed in any::<u64>(), n in 1usize..=3) {
        let rho = wishart_state(n, &mut rng(seed));
        let d = relative_entropy(&rho, &DensityMatrix::maximally_mixed(n)).unwrap().finite().unwrap();
        prop_assert!((d - (n as f64 - von_neumann_entropy(&rho))).abs() < 1e-9);
    }

    #[test]
    fn all_k_subsets_satisfy_the_subset_inequality(seed in any::<u64>(), n in 2usize..=4, k in 1usize..=4) {
        prop_assume!(k <= n);
        let rho = wishart_state(n, &mut rng(seed));
        let family = SubsetFamily::all_k_subsets(n, k).unwrap();
        let t = binomial(n - 1, k - 1);
        prop_assert!(shearer_slack(&rho, &family, t).unwrap() >= -1e-7);
    }

    #[test]
    fn mutual_information_is_symmetric_and_bounded(seed in any::<u64>(), n in 2usize..=4, cut in 1usize..4) {
        prop_assume!(cut < n);
        let rho = wishart_state(n, &mut rng(seed));
        let part = Bipartition::chain(n, cut).unwrap();
        let flipped = part.side_b();
        let info = mutual_information(&rho, &part).unwrap();
        let by_hand = subsystem_entropy(&rho, part.side_a()).unwrap() + subsystem_entropy(&rho, &flipped).unwrap()
            - von_neumann_entropy(&rho);
        prop_assert!((info - by_hand).abs() < 1e-9);
        prop_assert!(info >= -1e-9);
        prop_assert!(info <= 2.0 * cut.min(n - cut) as f64 + 1e-9);
    }

    #[test]
    fn light_cone_caps_pure_entanglement(seed in any::<u64>(), n in 2usize..=6, depth in 0usize..=5, cut in 1usize..6) {
        prop_assume!(cut < n);
        let circuit = random_chain_circuit(n, depth, 1.0, &mut rng(seed));
        let rho = evolve(&circuit, NoiseStrength::NOISELESS, EvolveOptions::default()).unwrap().state;
        let part = Bipartition::chain(n, cut).unwrap();
        let bound = depth_entanglement_bound(&circuit, &part).unwrap();
        prop_assert!(subsystem_entropy(&rho, part.side_a()).unwrap() <= bound + 1e-7);
        prop_assert!(bound <= depth as f64);
    }

    #[test]
    fn plateau_sits_above_crossover(n in 2usize..2000, p in 0.001..0.999f64) {
        let p = NoiseStrength::new(p).unwrap();
        prop_assume!(n as f64 > 1.0 / p.survival());
        prop_assert!(ent_bound_1d(n, p).unwrap() >= t_star_1d(n, p).unwrap() as f64);
    }

    #[test]
    fn chain_curve_is_between_zero_and_half_n(p in 0.01..0.99f64) {
        let p = NoiseStrength::new(p).unwrap();
        let ns: Vec<usize> = (2..200).collect();
        for row in plateau_curve(&ns, p, CurveTopology::Chain).unwrap() {
            prop_assert!(row.curve_value >= 0.0 && row.curve_value <= row.n as f64 / 2.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn search_never_beats_its_own_certificate(seed in any::<u64>()) {
        let rho = wishart_state(2, &mut rng(seed));
        let part = Bipartition::halves(2).unwrap();
        let config = SearchConfig { restarts: 2, iters: 40, ..SearchConfig::new(seed) };
        let found = er_upper_via_search(&rho, &part, &config).unwrap();
        let recomputed = relative_entropy(&rho, found.witness.assembled()).unwrap().finite().unwrap();
        prop_assert!((found.bound - recomputed).abs() < 1e-9);
        prop_assert!(found.bound <= er_upper_via_max_mixed(&rho) + 1e-9);
        prop_assert!(found.bound >= -1e-12);
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
