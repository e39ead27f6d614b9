//! Fixtures shared by the benchmarks.

use matgrowth::backends::graphic::{make_counterexample_graph, GraphicMatroid};
use matgrowth::backends::linear::{make_monomial_module_system, LinearMatroid};
use matgrowth::backends::trivial::{make_sumset_system, IntVec, TrivialMatroid};
use matgrowth::synth::StaircaseFunction;
use matgrowth::{DecreasingTable, MultiIndex, OperatorSystem, Partition};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Fixture<M> = (OperatorSystem<M>, Vec<<M as matgrowth::Matroid>::Element>);

/// Translations by `b` on `ℤ`, seeded at `{0}`.
pub fn sumset(b: &[i64]) -> Fixture<TrivialMatroid> {
    let set = b.iter().map(|&x| IntVec::scalar(x)).collect();
    let sys = make_sumset_system(&[set]).expect("nonempty set");
    (sys, vec![IntVec::scalar(0)])
}

/// `K[x_1, …, x_vars]` graded by `sizes`.
pub fn polynomial_ring(vars: usize, sizes: Vec<usize>) -> Fixture<LinearMatroid> {
    let p = Partition::new(sizes).expect("valid partition");
    make_monomial_module_system(vars, p, 1, &[]).expect("no relations")
}

pub fn oscillator(limit: u64) -> Fixture<GraphicMatroid> {
    make_counterexample_graph(limit)
}

/// A reproducible random staircase tabulated on `[0, 8]^m`.
pub fn staircase_table(m: usize, seed: u64) -> DecreasingTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = StaircaseFunction::random(&mut rng, m, 5, 4);
    f.table(MultiIndex::new(vec![8; m]), Partition::trivial(m))
}
