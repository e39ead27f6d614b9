//! Synthetic decreasing functions and random backend inputs.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::axioms::{fuzz_rank_axioms, FuzzReport};
use crate::backends::chain::{ChainCell, ChainMatroid, ChainOracle, Complex};
use crate::backends::circuit::{Atom, CircuitMatroid, CircuitRule};
use crate::backends::graphic::{Edge, GraphicMatroid};
use crate::backends::ideal::IdealCountMatroid;
use crate::backends::linear::{LinVec, LinearMatroid};
use crate::backends::trivial::{IntVec, TrivialMatroid};
use crate::engine::DecreasingTable;
use crate::matroid::MatroidError;
use crate::multiindex::{MultiIndex, Partition};

/// `f(ū) = #{n : ū ∈ I_n}` where `I_1 ⊇ I_2 ⊇ …` are downward closed, each
/// given by the antichain of minimal points of its complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaircaseFunction {
    m: usize,
    complements: Vec<Vec<MultiIndex>>,
}

impl StaircaseFunction {
    /// `complements[n]` generates the complement of `I_{n+1}`. Later levels
    /// inherit the generators of earlier ones, so nesting always holds.
    pub fn new(m: usize, complements: Vec<Vec<MultiIndex>>) -> Self {
        let mut acc: Vec<MultiIndex> = Vec::new();
        let complements = complements
            .into_iter()
            .map(|gens| {
                acc.extend(gens);
                minimal(&acc)
            })
            .collect();
        StaircaseFunction { m, complements }
    }

    /// Up to `max_value` levels, each adding up to two generators with
    /// entries `≤ max_coord`.
    pub fn random(rng: &mut impl Rng, m: usize, max_value: u32, max_coord: u32) -> Self {
        let levels = rng.gen_range(0..=max_value) as usize;
        let complements = (0..levels)
            .map(|_| {
                let count = rng.gen_range(0..=2);
                (0..count)
                    .map(|_| {
                        MultiIndex::new((0..m).map(|_| rng.gen_range(0..=max_coord)).collect())
                    })
                    .collect()
            })
            .collect();
        Self::new(m, complements)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn value(&self, u: &MultiIndex) -> u32 {
        self.complements
            .iter()
            .filter(|gens| !gens.iter().any(|g| g.precedes(u)))
            .count() as u32
    }

    /// Value far out in every coordinate.
    pub fn limit(&self) -> u32 {
        self.complements.iter().filter(|g| g.is_empty()).count() as u32
    }

    /// Coordinatewise max over all generators.
    pub fn reach(&self) -> MultiIndex {
        self.complements
            .iter()
            .flatten()
            .fold(MultiIndex::zero(self.m), |acc, g| acc.join(g))
    }

    pub fn table(&self, bound: MultiIndex, partition: Partition) -> DecreasingTable {
        DecreasingTable::from_fn(bound, partition, |u| self.value(u))
    }
}

fn minimal(xs: &[MultiIndex]) -> Vec<MultiIndex> {
    let mut out: Vec<MultiIndex> = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        let dominated = xs
            .iter()
            .enumerate()
            .any(|(j, y)| y.precedes(x) && (y != x || j < i));
        if !dominated {
            out.push(x.clone());
        }
    }
    out.sort();
    out
}

fn pick<T: Clone, R: Rng>(rng: &mut R, pool: &[T], max: usize) -> Vec<T> {
    let n = rng.gen_range(0..=max);
    (0..n).map(|_| pool.choose(rng).expect("nonempty pool").clone()).collect()
}

/// Fuzzes the rank axioms of every backend on `trials` random pairs each.
pub fn fuzz_backends<R: Rng>(
    rng: &mut R,
    trials: usize,
) -> Result<Vec<(&'static str, FuzzReport)>, MatroidError> {
    let mut out = Vec::new();

    let ints: Vec<IntVec> = (-4..=4).map(IntVec::scalar).collect();
    out.push((
        "trivial",
        fuzz_rank_axioms(&TrivialMatroid::new(1), rng, trials, |r| pick(r, &ints, 5))?,
    ));

    let ideal = IdealCountMatroid::new(
        2,
        vec![MultiIndex::from(&[3u32, 0][..]), MultiIndex::from(&[1u32, 2][..])],
    )
    .expect("antichain");
    let points: Vec<MultiIndex> = crate::multiindex::box_points(&[4, 4]).collect();
    out.push((
        "ideal-count",
        fuzz_rank_axioms(&ideal, rng, trials, |r| pick(r, &points, 5))?,
    ));

    let vectors: Vec<LinVec> = (0..40)
        .map(|_| {
            let xs: Vec<i64> = (0..4)
                .map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(-2..=2) })
                .collect();
            LinVec::from_ints(&xs)
        })
        .collect();
    out.push((
        "linear",
        fuzz_rank_axioms(&LinearMatroid::vector_space(4), rng, trials, |r| {
            pick(r, &vectors, 5)
        })?,
    ));

    let module = LinearMatroid::monomial_module(2, 1, &[(0, vec![2, 1])]).expect("valid");
    let live: Vec<Vec<u32>> = crate::multiindex::box_points(&[3, 3])
        .map(|u| {
            let mut key = vec![0];
            key.extend(u.entries());
            key
        })
        .filter(|k| module.is_live(k))
        .collect();
    let combos: Vec<LinVec> = (0..40)
        .map(|_| {
            let terms: Vec<(Vec<u32>, BigRational)> = (0..rng.gen_range(1..=3))
                .map(|_| {
                    (
                        live.choose(rng).expect("live monomials").clone(),
                        BigRational::from_integer(BigInt::from(rng.gen_range(1..=3))),
                    )
                })
                .collect();
            LinVec::from_terms(terms)
        })
        .collect();
    out.push((
        "linear-module",
        fuzz_rank_axioms(&module, rng, trials, |r| pick(r, &combos, 5))?,
    ));

    let edges: Vec<Edge> = (0..6)
        .flat_map(|a| (a..6).map(move |b| Edge::new(a, b)))
        .collect();
    out.push((
        "graphic",
        fuzz_rank_axioms(&GraphicMatroid, rng, trials, |r| pick(r, &edges, 6))?,
    ));

    let complex = Arc::new(
        Complex::generated_by(&[vec![0, 1, 2], vec![1, 2, 3], vec![3, 4], vec![0, 4]])
            .expect("valid simplices"),
    );
    let one_cells: Vec<ChainCell> = [[0, 1], [0, 2], [1, 2], [1, 3], [2, 3], [3, 4], [0, 4]]
        .iter()
        .map(|e| ChainCell::Simplex(e.to_vec()))
        .chain([ChainCell::Zero])
        .collect();
    for (name, oracle) in [("chain-count", ChainOracle::Count), ("chain-boundary", ChainOracle::Boundary)] {
        let m = ChainMatroid::new(complex.clone(), 1, oracle);
        out.push((name, fuzz_rank_axioms(&m, rng, trials, |r| pick(r, &one_cells, 5))?));
    }

    // Circuits of the graphic matroid of K4 at degree 0, uniform rank 2 elsewhere.
    let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let index = |a: i64, b: i64| k4.iter().position(|&e| e == (a.min(b), a.max(b))).unwrap() as u32;
    let cycle = |vs: &[i64]| -> BTreeSet<u32> {
        (0..vs.len()).map(|i| index(vs[i], vs[(i + 1) % vs.len()])).collect()
    };
    let family = vec![
        cycle(&[0, 1, 2]),
        cycle(&[0, 1, 3]),
        cycle(&[0, 2, 3]),
        cycle(&[1, 2, 3]),
        cycle(&[0, 1, 2, 3]),
        cycle(&[0, 1, 3, 2]),
        cycle(&[0, 2, 1, 3]),
    ];
    let circuit = CircuitMatroid::new(
        1,
        6,
        BTreeMap::from([(MultiIndex::from(&[0u32][..]), family)]),
        CircuitRule::Uniform(2),
    )
    .expect("graphic circuits satisfy elimination");
    let atoms: Vec<Atom> = (0..2u32)
        .flat_map(|d| (0..6).map(move |i| Atom::new(vec![d], i)))
        .collect();
    out.push((
        "circuit",
        fuzz_rank_axioms(&circuit, rng, trials, |r| pick(r, &atoms, 6))?,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::from(v)
    }

    #[test]
    fn nested_levels() {
        let f = StaircaseFunction::new(2, vec![vec![mi(&[2, 2])], vec![mi(&[1, 0])], vec![]]);
        assert_eq!(f.value(&mi(&[0, 0])), 3);
        assert_eq!(f.value(&mi(&[1, 1])), 1);
        assert_eq!(f.value(&mi(&[0, 5])), 3);
        assert_eq!(f.value(&mi(&[3, 3])), 0);
        assert_eq!(f.limit(), 0);
        assert_eq!(f.reach(), mi(&[2, 2]));
    }

    #[test]
    fn duplicates_collapse() {
        let f = StaircaseFunction::new(1, vec![vec![mi(&[3]), mi(&[3]), mi(&[5])]]);
        assert_eq!(f.complements[0], vec![mi(&[3])]);
    }

    #[test]
    fn backends_survive_a_short_fuzz() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for (name, report) in fuzz_backends(&mut rng, 50).unwrap() {
            assert!(report.passed(), "{name}: {:?}", report.violations.first());
        }
    }

    #[test]
    fn random_tables_decrease() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let f = StaircaseFunction::random(&mut rng, 3, 5, 4);
            let t = f.table(mi(&[5, 5, 5]), Partition::trivial(3));
            assert!(t.is_decreasing());
        }
    }
}
