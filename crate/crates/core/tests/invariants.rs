mod support;

use std::sync::Arc;

use filterfn::mass::SUM_TOLERANCE;
use filterfn::sim::{replication_rng, sample_counts};
use filterfn::{
    approximate, bayesian_mass, belief, belief_min, build_algebra_from_partition, build_mass,
    contextual_mass, contextual_prob, enumerate_subsets, estimate_mass, eval_filter, gamma,
    pignistic, plausibility, plausibility_k, plausibility_min, sampling_probability,
    validate_family, FilterSpec, IndicatorKind, NeighbourhoodFamily, ProbabilityMeasure, Share,
    SubsetMask, Universe,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use support::{instance, random_family, random_masses, random_partition, to_mask};

fn algebra_from_seed(n: usize, rng: &mut ChaCha8Rng) -> Arc<NeighbourhoodFamily> {
    let u = Universe::numbered(n).unwrap();
    let blocks: Vec<SubsetMask> = random_partition(n, rng).iter().map(to_mask).collect();
    Arc::new(build_algebra_from_partition(&u, &blocks).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn partition_algebra_shape(n in 1usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = algebra_from_seed(n, &mut rng);
        let atoms = f.atoms().unwrap();
        prop_assert_eq!(f.len(), 1 << atoms.len());
        let again = validate_family(f.universe(), f.members()).unwrap();
        prop_assert_eq!(again.atoms(), Some(atoms));
        for &a in f.members() {
            for &b in f.members() {
                if a.is_disjoint(b) {
                    prop_assert_eq!(
                        f.noa(a.union(b)).unwrap(),
                        f.noa(a).unwrap() + f.noa(b).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn sampling_probability_is_additive(n in 1usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = algebra_from_seed(n, &mut rng);
        let p = sampling_probability(f.clone()).unwrap();
        prop_assert!((p.atom_probs().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        for &a in f.members() {
            for &b in f.members() {
                if a.is_disjoint(b) {
                    let lhs = p.measure(a.union(b));
                    prop_assert!((lhs - p.measure(a) - p.measure(b)).abs() <= 1e-12);
                }
            }
        }
        let m = bayesian_mass(&p);
        prop_assert!((m.total() - 1.0).abs() <= SUM_TOLERANCE);
    }

    #[test]
    fn duality_and_sandwich(n in 1usize..=5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = random_family(n, &mut rng);
        let inst = instance(n, random_masses(&fam, &mut rng));
        let m = &inst.mass;
        let u = m.family().universe().clone();
        let closed_world = m.get(SubsetMask::EMPTY) == 0.0;
        for e in enumerate_subsets(&u, true) {
            let pl = plausibility(m, e).unwrap();
            let dual = belief(m, u.full()).unwrap() - belief(m, u.complement(e)).unwrap();
            prop_assert!((pl - dual).abs() <= 1e-12);
            let bel = belief(m, e).unwrap();
            if closed_world && !e.is_empty() {
                prop_assert!(bel <= pl + 1e-15);
            }
            prop_assert!(belief_min(m, e).unwrap() <= bel);
            // every member contains ∅, so pl_min(∅) = 1 while pl(∅) = 0
            if !e.is_empty() {
                prop_assert!(plausibility_min(m, e).unwrap() <= pl);
            }
        }
    }

    #[test]
    fn parameterized_filters_are_antitone(n in 1usize..=5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = random_family(n, &mut rng);
        let inst = instance(n, random_masses(&fam, &mut rng));
        let m = &inst.mass;
        let grid: Vec<Share> = ["0", "0.25", "1/3", "0.5", "0.75", "1"]
            .iter().map(|t| t.parse().unwrap()).collect();
        let ind = |k: IndicatorKind, e| eval_filter(m, &FilterSpec::Indicator(k), e).unwrap();
        for e in enumerate_subsets(m.family().universe(), true) {
            for k in 1..n {
                prop_assert!(ind(IndicatorKind::UpperK(k + 1), e) <= ind(IndicatorKind::UpperK(k), e));
                prop_assert!(ind(IndicatorKind::LowerK(k + 1), e) <= ind(IndicatorKind::LowerK(k), e));
                prop_assert!(plausibility_k(m, k + 1, e).unwrap() <= plausibility_k(m, k, e).unwrap());
            }
            for w in grid.windows(2) {
                let (s, t) = (w[0], w[1]);
                prop_assert!(ind(IndicatorKind::UpperS(t), e) <= ind(IndicatorKind::UpperS(s), e));
                prop_assert!(ind(IndicatorKind::LowerS(t), e) <= ind(IndicatorKind::LowerS(s), e));
            }
        }
    }

    #[test]
    fn singleton_sums_are_probabilities(n in 1usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let singletons: Vec<SubsetMask> = (0..n).map(SubsetMask::singleton).collect();

        // pignistic and contextual on the powerset with no mass on ∅
        let fam: Vec<_> = support::oracle::all_subsets(n).into_iter().filter(|s| !s.is_empty()).collect();
        let mut pairs = random_masses(&fam, &mut rng);
        pairs.push((Default::default(), 0.0));
        let inst = instance(n, pairs);
        let pp: f64 = singletons.iter().map(|&q| pignistic(&inst.mass, q).unwrap()).sum();
        prop_assert!((pp - 1.0).abs() <= 1e-12);
        let cp: f64 = singletons.iter().map(|&q| contextual_mass(&inst.mass, q).unwrap()).sum();
        prop_assert!((cp - 1.0).abs() <= 1e-12);

        // contextual mass on an arbitrary family without ∅
        let fam: Vec<_> = random_family(n, &mut rng).into_iter().filter(|s| !s.is_empty()).collect();
        if !fam.is_empty() {
            let inst = instance(n, random_masses(&fam, &mut rng));
            let cp: f64 = singletons.iter().map(|&q| contextual_mass(&inst.mass, q).unwrap()).sum();
            prop_assert!((cp - 1.0).abs() <= 1e-12);
        }

        // contextual probability for random atom probabilities
        let f = algebra_from_seed(n, &mut rng);
        let raw: Vec<f64> = f.atoms().unwrap().iter().map(|_| rng.random::<f64>() + 1e-3).collect();
        let total: f64 = raw.iter().sum();
        let p = ProbabilityMeasure::new(f, raw.iter().map(|v| v / total).collect()).unwrap();
        let cpp: f64 = singletons.iter().map(|&q| contextual_prob(&p, q).unwrap()).sum();
        prop_assert!((cpp - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn rough_measures_are_filters(n in 1usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = algebra_from_seed(n, &mut rng);
        let u = f.universe().clone();
        let m = bayesian_mass(&sampling_probability(f.clone()).unwrap());
        for e in enumerate_subsets(&u, true) {
            let r = approximate(&f, e).unwrap();
            prop_assert!(r.lower.is_subset_of(e) && e.is_subset_of(r.upper));
            prop_assert!(r.mu_lower <= r.mu_upper);
            prop_assert!((r.mu_upper - plausibility(&m, e).unwrap()).abs() <= 1e-12);
            prop_assert!((r.mu_lower - belief(&m, e).unwrap()).abs() <= 1e-12);
            let g = gamma(&f, e).unwrap();
            let via_bel = belief(&m, e).unwrap() + belief(&m, u.complement(e)).unwrap();
            prop_assert!((g - via_bel).abs() <= 1e-12);
            prop_assert_eq!(g, gamma(&f, u.complement(e)).unwrap());
            if f.contains(e) {
                prop_assert_eq!((r.lower, r.upper), (e, e));
                prop_assert_eq!(g, 1.0);
            }
        }
    }
}

#[test]
fn belief_min_equals_belief_only_on_powerset() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 3;
    let full = support::oracle::all_subsets(n);
    let inst = instance(n, random_masses(&full, &mut rng));
    for e in enumerate_subsets(inst.mass.family().universe(), true) {
        assert_eq!(belief_min(&inst.mass, e), belief(&inst.mass, e));
    }
}

#[test]
fn relative_frequencies_are_unbiased() {
    let u = Universe::numbered(3).unwrap();
    let members = [
        u.subset(&["1"]).unwrap(),
        u.subset(&["2", "3"]).unwrap(),
        u.full(),
    ];
    let f = Arc::new(validate_family(&u, &members).unwrap());
    let m = build_mass(
        f,
        &[(members[0], 0.2), (members[1], 0.5), (members[2], 0.3)],
    )
    .unwrap();
    let (reps, n_obs) = (10_000u64, 50u64);
    let mut sums = vec![0.0; m.family().len()];
    for r in 0..reps {
        let est = estimate_mass(&sample_counts(&m, n_obs, &mut replication_rng(2024, r))).unwrap();
        for (s, v) in sums.iter_mut().zip(est.values()) {
            *s += v;
        }
    }
    for ((_, truth), s) in m.iter().zip(&sums) {
        let mean = s / reps as f64;
        let bound = 4.0 * (truth * (1.0 - truth) / n_obs as f64 / reps as f64).sqrt();
        assert!(
            (mean - truth).abs() < bound,
            "mean {mean} truth {truth} bound {bound}"
        );
    }
}
