//! The decreasing function `f(ū) = rk(φ^ū(A) | Θ_ū(A) ∪ Φ^{(‖ū‖)}(B))`.
//!
//! `Θ_ū(A)` collects `φ^r̄(A)` over the words `r̄` with `‖r̄‖ = ‖ū‖` and
//! `r̄ <_lex ū`. Summed over a level, `f` telescopes to
//! `rk(Φ^{(s̄)}(A) | Φ^{(s̄)}(B))`.

use std::fmt;

use rayon::prelude::*;

use crate::matroid::{relative_rank, Element, Independence, Matroid};
use crate::multiindex::{box_points, MultiIndex, Partition};
use crate::operators::{apply_word, graded_orbit, OperatorSystem, OrbitCache};

use super::GrowthError;

/// Values of a function `ℕ^m → ℕ` on the box `ū ⪯ bound`.
#[derive(Clone, PartialEq, Eq)]
pub struct DecreasingTable {
    bound: MultiIndex,
    partition: Partition,
    values: Vec<u32>,
    violations: Vec<(MultiIndex, MultiIndex)>,
}

impl fmt::Debug for DecreasingTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DecreasingTable")
            .field("bound", &self.bound)
            .field("partition", &self.partition.sizes())
            .field("violations", &self.violations.len())
            .finish()
    }
}

impl DecreasingTable {
    /// Tabulates `f` on the box and records every covering pair
    /// `ū ⪯ ū + ê_i` on which it increases.
    pub fn from_fn(
        bound: MultiIndex,
        partition: Partition,
        mut f: impl FnMut(&MultiIndex) -> u32,
    ) -> Self {
        assert_eq!(bound.len(), partition.m(), "box and partition disagree on m");
        let values = box_points(bound.entries()).map(|u| f(&u)).collect();
        Self::from_values(bound, partition, values)
    }

    fn from_values(bound: MultiIndex, partition: Partition, values: Vec<u32>) -> Self {
        let mut table = DecreasingTable {
            bound,
            partition,
            values,
            violations: Vec::new(),
        };
        let mut violations = Vec::new();
        for u in box_points(table.bound.entries()) {
            let here = table.get(&u).expect("inside box");
            for i in 0..u.len() {
                let up = u.plus_unit(i);
                if let Some(there) = table.get(&up) {
                    if there > here {
                        violations.push((u.clone(), up));
                    }
                }
            }
        }
        table.violations = violations;
        table
    }

    pub fn bound(&self) -> &MultiIndex {
        &self.bound
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn m(&self) -> usize {
        self.bound.len()
    }

    /// Pairs `(ū, ū + ê_i)` with `f(ū) < f(ū + ê_i)`.
    pub fn violations(&self) -> &[(MultiIndex, MultiIndex)] {
        &self.violations
    }

    pub fn is_decreasing(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn get(&self, u: &MultiIndex) -> Option<u32> {
        box_index(&self.bound, u).map(|i| self.values[i])
    }

    pub fn at_origin(&self) -> u32 {
        self.values[0]
    }

    pub fn points(&self) -> impl Iterator<Item = (MultiIndex, u32)> + '_ {
        box_points(self.bound.entries()).zip(self.values.iter().copied())
    }

    /// Largest part degree whose words all lie inside the box.
    pub fn full_levels(&self) -> Vec<u32> {
        (0..self.partition.k())
            .map(|p| {
                self.bound.entries()[self.partition.range(p)]
                    .iter()
                    .copied()
                    .min()
                    .expect("parts are nonempty")
            })
            .collect()
    }

    /// `Σ_{‖ū‖ = s̄} f(ū)`, or `None` when some such `ū` is outside the box.
    pub fn graded_sum(&self, s: &[u32]) -> Option<u64> {
        let mut total = 0u64;
        for w in self.partition.words(s) {
            total += u64::from(self.get(&w)?);
        }
        Some(total)
    }
}

/// Row-major position of `u` in the box, matching [`box_points`].
fn box_index(bound: &MultiIndex, u: &MultiIndex) -> Option<usize> {
    if !u.precedes(bound) {
        return None;
    }
    let mut idx = 0usize;
    for (&x, &b) in u.entries().iter().zip(bound.entries()) {
        idx = idx * (b as usize + 1) + x as usize;
    }
    Some(idx)
}

fn sorted_seeds<E: Element>(a: &[E]) -> Vec<E> {
    let mut seeds = a.to_vec();
    seeds.sort_by_cached_key(|e| e.canonical_key());
    seeds.dedup();
    seeds
}

/// `f(ū)` straight from the definition, building `Θ_ū(A) ∪ Ψ^{(‖ū‖)}(B)`
/// explicitly.
pub fn eval_f<M: Matroid>(
    sys: &OperatorSystem<M>,
    a: &[M::Element],
    b: &[M::Element],
    u: &MultiIndex,
) -> Result<usize, GrowthError> {
    eval_context_f(sys, sys, a, b, u)
}

/// `f` with the base orbit taken under `base` instead of `sys`.
pub fn eval_context_f<M: Matroid>(
    sys: &OperatorSystem<M>,
    base: &OperatorSystem<M>,
    a: &[M::Element],
    b: &[M::Element],
    u: &MultiIndex,
) -> Result<usize, GrowthError> {
    let level = sys.partition().part_degree(u)?;
    let cache = OrbitCache::new();
    let mut context = graded_orbit(base, b, &level, &OrbitCache::new())?;
    for w in sys.partition().words(&level) {
        if &w >= u {
            continue;
        }
        for x in a {
            context.push(apply_word(sys, x, &w, &cache)?);
        }
    }
    let image = a
        .iter()
        .map(|x| apply_word(sys, x, u, &cache))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(relative_rank(sys.matroid().as_ref(), &image, &context)?)
}

/// `f` on the box `ū ⪯ bound`, one incremental pass per level.
///
/// For each part degree `s̄ ⪯ ‖bound‖` a basis is seeded with `Ψ^{(s̄)}(B)` and
/// the images `φ^r̄(A)` are inserted in lex order of `r̄`; `f(r̄)` is the
/// number of insertions that raised the rank. Levels run in parallel.
pub fn tabulate_f<M: Matroid>(
    sys: &OperatorSystem<M>,
    a: &[M::Element],
    b: &[M::Element],
    bound: &MultiIndex,
) -> Result<DecreasingTable, GrowthError> {
    tabulate_context_f(sys, sys, a, b, bound)
}

pub fn tabulate_context_f<M: Matroid>(
    sys: &OperatorSystem<M>,
    base: &OperatorSystem<M>,
    a: &[M::Element],
    b: &[M::Element],
    bound: &MultiIndex,
) -> Result<DecreasingTable, GrowthError> {
    let p = sys.partition();
    if bound.len() != p.m() {
        return Err(GrowthError::Input(format!(
            "box {bound:?} has {} coordinates, the system has {} maps",
            bound.len(),
            p.m()
        )));
    }
    let seeds = sorted_seeds(a);
    let top = p.part_degree(bound)?;
    let levels: Vec<MultiIndex> = box_points(&top).collect();
    let cache = OrbitCache::new();
    let base_cache = OrbitCache::new();

    let per_level: Vec<Vec<(MultiIndex, u32)>> = levels
        .par_iter()
        .map(|level| {
            let words = p.words(level.entries());
            let Some(last) = words.iter().rposition(|w| w.precedes(bound)) else {
                return Ok(Vec::new());
            };
            let mut basis = sys.matroid().empty_basis();
            for x in graded_orbit(base, b, level.entries(), &base_cache)? {
                basis.insert(&x)?;
            }
            let mut out = Vec::new();
            for w in &words[..=last] {
                let before = basis.rank();
                for x in &seeds {
                    basis.insert(&apply_word(sys, x, w, &cache)?)?;
                }
                if w.precedes(bound) {
                    out.push((w.clone(), (basis.rank() - before) as u32));
                }
            }
            Ok(out)
        })
        .collect::<Result<_, GrowthError>>()?;

    let size: usize = bound.entries().iter().map(|&x| x as usize + 1).product();
    let mut values = vec![0u32; size];
    for (w, v) in per_level.into_iter().flatten() {
        values[box_index(bound, &w).expect("recorded words lie in the box")] = v;
    }
    Ok(DecreasingTable::from_values(bound.clone(), p.clone(), values))
}
