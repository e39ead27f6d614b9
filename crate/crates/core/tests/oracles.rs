mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::qn;
use matgrowth::backends::chain::{
    betti_polynomials, chain_system, ChainCell, ChainMatroid, ChainOracle, Complex, VertexMap,
};
use matgrowth::backends::graphic::{Edge, GraphicMatroid};
use matgrowth::backends::ideal::make_ideal_system;
use matgrowth::backends::linear::make_monomial_module_system;
use matgrowth::engine::realize_monomial_module;
use matgrowth::synth::{fuzz_backends, StaircaseFunction};
use matgrowth::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn every_backend_passes_a_thousand_axiom_checks() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (name, report) in fuzz_backends(&mut rng, 1000).unwrap() {
        assert_eq!(report.trials, 1000);
        assert!(report.passed(), "{name}: {}", report.violations[0]);
    }
}

#[test]
fn graphic_rank_matches_incidence_elimination() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let n = rng.gen_range(0..10);
        let edges: Vec<(i64, i64)> = (0..n)
            .map(|_| (rng.gen_range(0..7), rng.gen_range(0..7)))
            .collect();
        let elements: Vec<Edge> = edges.iter().map(|&(a, b)| Edge::new(a, b)).collect();
        let rank = GraphicMatroid.rank(&elements).unwrap();
        assert_eq!(rank, common::incidence_rank(&edges), "{edges:?}");
        assert_eq!(rank, common::component_rank(&edges), "{edges:?}");
    }
}

#[test]
fn chain_three_rank_formula_matches_boundary_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..60 {
        let count = rng.gen_range(1..6);
        let simplices: Vec<Vec<i64>> = (0..count)
            .map(|_| {
                let mut s: Vec<i64> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..6)).collect();
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        let complex = Arc::new(Complex::generated_by(&simplices).unwrap());
        let Complex::Finite(cells) = complex.as_ref() else { unreachable!() };
        let of_dim = |d: usize| -> Vec<ChainCell> {
            cells
                .iter()
                .filter(|s| s.len() == d + 1)
                .map(|s| ChainCell::Simplex(s.clone()))
                .collect()
        };
        let expected = common::betti_numbers(&simplices);
        for (n, &b) in expected.iter().enumerate() {
            let rk = |d: usize, oracle| ChainMatroid::new(complex.clone(), d, oracle).rank(&of_dim(d)).unwrap();
            let three = rk(n, ChainOracle::Count) - rk(n, ChainOracle::Boundary)
                - rk(n + 1, ChainOracle::Boundary);
            assert_eq!(three, b, "b_{n} of {simplices:?}");
        }
    }
}

#[test]
fn ideal_counts_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let m = rng.gen_range(1..=3);
        let mut gens: Vec<Vec<u32>> = Vec::new();
        for _ in 0..rng.gen_range(0..=3) {
            let g: Vec<u32> = (0..m).map(|_| rng.gen_range(0..=3)).collect();
            if !gens.iter().any(|h| common::dominated(h, &g) || common::dominated(&g, h)) {
                gens.push(g);
            }
        }
        let partition = Partition::trivial(m);
        let complement = gens.iter().map(|g| MultiIndex::from(g.as_slice())).collect();
        let (sys, seeds) = make_ideal_system(complement, partition.clone()).unwrap();
        let cache = OrbitCache::new();
        for t in 0..8 {
            let orbit = graded_orbit(&sys, &seeds, &[t], &cache).unwrap();
            let rank = sys.matroid().rank(&orbit).unwrap();
            let direct = common::monomials(m, t)
                .iter()
                .filter(|u| common::in_ideal(&gens, u))
                .count();
            assert_eq!(rank, direct, "{gens:?} at {t}");
        }
    }
}

#[test]
fn monomial_module_from_table_has_the_table_hilbert_function() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..12 {
        let m = rng.gen_range(1..=2);
        let f = StaircaseFunction::random(&mut rng, m, 3, 3);
        let partition = Partition::trivial(m);
        let bound = MultiIndex::new(vec![6; m]);
        let table = f.table(bound, partition.clone());
        let module = realize_monomial_module(&table).unwrap();
        assert!(module.is_consistent());

        let generators = table.at_origin();
        if generators == 0 {
            continue;
        }
        let (sys, seeds) =
            make_monomial_module_system(m, partition, generators, &module.relations()).unwrap();
        let cache = OrbitCache::new();
        for (s, count) in &module.counts {
            let orbit = graded_orbit(&sys, &seeds, s, &cache).unwrap();
            let dim = sys.matroid().rank(&orbit).unwrap();
            assert_eq!(dim as u64, count.table, "{f:?} at {s:?}");
        }
    }
}

fn orbit_cells(
    complex: &Arc<Complex>,
    maps: &[VertexMap],
    partition: &Partition,
    seed: &[Vec<i64>],
    s: &[u32],
    mode: OrbitMode,
) -> Vec<Vec<i64>> {
    let Complex::Finite(cells) = Complex::generated_by(seed).unwrap() else { unreachable!() };
    let mut out = BTreeSet::new();
    for dim in 0..=2 {
        let sys = chain_system(complex.clone(), maps, partition.clone(), dim, ChainOracle::Count).unwrap();
        let a: Vec<ChainCell> = cells
            .iter()
            .filter(|c| c.len() == dim + 1)
            .map(|c| ChainCell::Simplex(c.clone()))
            .collect();
        let orbit = match mode {
            OrbitMode::Graded => graded_orbit(&sys, &a, s, &OrbitCache::new()).unwrap(),
            OrbitMode::Cumulative => cumulative_orbit(&sys, &a, s, &OrbitCache::new()).unwrap(),
        };
        for c in orbit {
            if let ChainCell::Simplex(v) = c {
                out.insert(v);
            }
        }
    }
    out.into_iter().collect()
}

fn check_betti_family(
    complex: Arc<Complex>,
    maps: Vec<VertexMap>,
    partition: Partition,
    seed: Vec<Vec<i64>>,
    mode: OrbitMode,
    points: u32,
) {
    let cfg = StabilizationConfig::default();
    for n in 0..=1 {
        let b = betti_polynomials(complex.clone(), &maps, partition.clone(), &seed, n, mode, &cfg)
            .unwrap();
        assert!(b.parts().iter().all(|p| p.is_certified()));
        let s0 = b.betti.threshold().to_vec();
        for t in 0..points {
            let s: Vec<u32> = s0.iter().map(|x| x + t).collect();
            let cells = orbit_cells(&complex, &maps, &partition, &seed, &s, mode);
            let expected = common::betti_numbers(&cells).get(n).copied().unwrap_or(0);
            assert_eq!(b.betti.eval_u32(&s), qn(expected as u64), "b_{n} at {s:?}");
        }
    }
}

#[test]
fn betti_cycle_under_identity() {
    let complex = Arc::new(Complex::generated_by(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap());
    let seed = vec![vec![0, 1], vec![1, 2], vec![0, 2]];
    let cfg = StabilizationConfig::default();
    let id = vec![VertexMap::Shift(0)];
    for (n, want) in [(0, "1"), (1, "1")] {
        let b = betti_polynomials(complex.clone(), &id, Partition::trivial(1), &seed, n, OrbitMode::Graded, &cfg)
            .unwrap();
        assert_eq!(b.betti.to_string(), want);
    }
}

#[test]
fn betti_path_cumulative() {
    let complex = Arc::new(Complex::periodic(&[vec![0, 1]], 1).unwrap());
    check_betti_family(
        complex,
        vec![VertexMap::Shift(1)],
        Partition::trivial(1),
        vec![vec![0, 1]],
        OrbitMode::Cumulative,
        8,
    );
}

#[test]
fn betti_disjoint_triangles_graded_and_cumulative() {
    let base = vec![vec![0, 1], vec![1, 2], vec![0, 2]];
    let complex = Arc::new(Complex::periodic(&base, 3).unwrap());
    for mode in [OrbitMode::Graded, OrbitMode::Cumulative] {
        check_betti_family(complex.clone(), vec![VertexMap::Shift(3)], Partition::trivial(1), base.clone(), mode, 8);
    }
}

#[test]
fn betti_square_grid_two_parts() {
    let w = 1000;
    let mut edges = Vec::new();
    for x in 0..40 {
        for y in 0..40 {
            let v = x + w * y;
            edges.push(vec![v, v + 1]);
            edges.push(vec![v, v + w]);
        }
    }
    let complex = Arc::new(Complex::generated_by(&edges).unwrap());
    let square = vec![vec![0, 1], vec![1, 1 + w], vec![w, w + 1], vec![0, w]];
    check_betti_family(
        complex,
        vec![VertexMap::Shift(1), VertexMap::Shift(w)],
        Partition::singletons(2),
        square,
        OrbitMode::Cumulative,
        4,
    );
}
