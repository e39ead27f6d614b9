mod common;

use std::sync::Arc;

use matgrowth::backends::linear::{make_monomial_module_system, LinVec};
use matgrowth::backends::trivial::{translation, IntVec, TrivialMatroid};
use matgrowth::engine::{phi_star_rank, StaircaseStatus};
use matgrowth::synth::StaircaseFunction;
use matgrowth::*;
use num::bigint::BigInt;
use num::rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn partition_strategy(m: usize) -> impl Strategy<Value = Partition> {
    proptest::collection::vec(any::<bool>(), m.saturating_sub(1)).prop_map(move |cuts| {
        let mut sizes = vec![1usize];
        for cut in cuts {
            if cut {
                sizes.push(1);
            } else {
                *sizes.last_mut().unwrap() += 1;
            }
        }
        Partition::new(sizes).unwrap()
    })
}

fn translations(steps: &[i64], partition: Partition) -> OperatorSystem<TrivialMatroid> {
    OperatorSystem::uniform(
        Arc::new(TrivialMatroid::new(1)),
        steps.iter().map(|&b| translation(IntVec::scalar(b))).collect(),
        partition,
        PartFlag::Triangular,
    )
    .unwrap()
}

fn ints(v: &[i64]) -> Vec<IntVec> {
    v.iter().map(|&x| IntVec::scalar(x)).collect()
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn system_case() -> impl Strategy<Value = (Vec<i64>, Partition, Vec<i64>, Vec<i64>)> {
    (1usize..=3).prop_flat_map(|m| {
        (
            proptest::collection::vec(-3i64..=6, m),
            partition_strategy(m),
            proptest::collection::vec(-4i64..=4, 0..=2),
            proptest::collection::vec(-4i64..=4, 0..=2),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn round_trip_reproduces_graded_sums(
        seed in any::<u64>(),
        (m, partition) in (1usize..=3).prop_flat_map(|m| (Just(m), partition_strategy(m))),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = StaircaseFunction::random(&mut rng, m, 5, 4);
        let bound = MultiIndex::new(f.reach().entries().iter().map(|&x| x + 3).collect());
        let table = f.table(bound, partition.clone());
        let stair = detect_stabilization(&table, 2).unwrap();
        prop_assert_eq!(stair.status, StaircaseStatus::WindowCertified);
        prop_assert!(stair.corner.precedes(&f.reach()));

        let num = numerator_from_table(&table, &stair.corner, &partition).unwrap();
        let p = interpolate(&num, partition.sizes());
        prop_assert!(p.respects_degree_bound());
        prop_assert_eq!(num.at_ones(), BigInt::from(f.limit()));

        let top: Vec<u32> = partition.sizes().iter().map(|&d| d as u32 - 1).collect();
        let scale: BigInt = partition.sizes().iter().map(|&d| factorial(d - 1)).product();
        prop_assert_eq!(
            p.coefficient(&top) * BigRational::from_integer(scale),
            BigRational::from_integer(num.at_ones())
        );

        let s0 = p.threshold().to_vec();
        let span = vec![2u32; partition.k()];
        for offset in multiindex::box_points(&span) {
            let s: Vec<u32> = s0.iter().zip(offset.entries()).map(|(a, b)| a + b).collect();
            let direct: u64 = common::graded_points(partition.sizes(), &s)
                .iter()
                .map(|u| u64::from(f.value(&MultiIndex::new(u.clone()))))
                .sum();
            prop_assert_eq!(p.eval_u32(&s), common::qn(direct), "at {:?}", s);
        }
    }

    #[test]
    fn level_sums_of_f_are_relative_ranks((steps, partition, a, b) in system_case()) {
        let sys = translations(&steps, partition.clone());
        let (a, b) = (ints(&a), ints(&b));
        let bound = MultiIndex::new(vec![3; steps.len()]);
        let table = tabulate_f(&sys, &a, &b, &bound).unwrap();
        prop_assert!(table.is_decreasing());
        for (u, v) in table.points() {
            prop_assert_eq!(v as usize, eval_f(&sys, &a, &b, &u).unwrap());
        }
        for s in multiindex::box_points(&table.full_levels()) {
            let cache = OrbitCache::new();
            let image = graded_orbit(&sys, &a, s.entries(), &cache).unwrap();
            let context = graded_orbit(&sys, &b, s.entries(), &cache).unwrap();
            let rank = relative_rank(sys.matroid().as_ref(), &image, &context).unwrap();
            prop_assert_eq!(table.graded_sum(s.entries()).unwrap(), rank as u64);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn degree_bounds((steps, partition, a, b) in system_case()) {
        let sys = translations(&steps, partition.clone());
        let cfg = StabilizationConfig::default();
        let p = dimension_polynomial(&sys, &ints(&a), &ints(&b), &cfg).unwrap();
        for (e, _) in p.polynomial.terms() {
            for (x, d) in e.iter().zip(partition.sizes()) {
                prop_assert!((*x as usize) < *d);
            }
        }
        let q = cumulative_polynomial(&sys, &ints(&a), &ints(&b), &cfg).unwrap();
        for (e, _) in q.polynomial.terms() {
            for (x, d) in e.iter().zip(partition.sizes()) {
                prop_assert!((*x as usize) <= *d);
            }
        }
    }

    #[test]
    fn phi_star_rank_ignores_the_partition(
        (steps, first, second, a) in (2usize..=3).prop_flat_map(|m| (
            proptest::collection::vec(-2i64..=4, m),
            partition_strategy(m),
            partition_strategy(m),
            proptest::collection::vec(-3i64..=3, 1..=2),
        )),
    ) {
        let cfg = StabilizationConfig::default();
        let r1 = phi_star_rank(&translations(&steps, first), &ints(&a), &[], &cfg).unwrap();
        let r2 = phi_star_rank(&translations(&steps, second), &ints(&a), &[], &cfg).unwrap();
        prop_assert_eq!(r1.value, r2.value);
    }

    #[test]
    fn dominant_terms_depend_only_on_the_closure(
        vars in 1usize..=3,
        extra in proptest::collection::vec((0usize..3, 1u32..=2), 1..=3),
        split in any::<bool>(),
    ) {
        let partition = if split { Partition::singletons(vars) } else { Partition::trivial(vars) };
        let (sys, seeds) = make_monomial_module_system(vars, partition, 1, &[]).unwrap();
        let mut bigger = seeds.clone();
        for (var, power) in extra {
            let mut exps = vec![0u32; vars];
            exps[var % vars] = power;
            let shifted = LinVec::monomial(0, &exps);
            bigger.push(shifted.add(&seeds[0]));
        }
        let cfg = StabilizationConfig::default();
        let q = cumulative_polynomial(&sys, &seeds, &[], &cfg).unwrap();
        let q2 = cumulative_polynomial(&sys, &bigger, &[], &cfg).unwrap();
        prop_assert_eq!(dominant_terms(&q.polynomial), dominant_terms(&q2.polynomial));
    }
}
