//! Sampled verification of commutation and of the triangularity hypotheses.
//!
//! A part `ψ_1, …, ψ_d` is triangular iff for all finite `A, B` and each `j`,
//! `rk(ψ_j(A) | ψ_1(A∪B) ⋯ ψ_{j−1}(A∪B) ψ_j(B)) ≤ rk(A | B)`. This module
//! tests that inequality on subsets of a finite orbit. Passing is evidence,
//! failing comes with a concrete witness.

use std::collections::HashSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matroid::{relative_rank, Element, Matroid};
use crate::multiindex::{box_points, MultiIndex, Partition};
use crate::operators::{apply_word, Operator, OperatorSystem, OrbitCache};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    /// Orbit depth (total degree) used to build the element pool.
    pub depth: u32,
    /// Pool elements kept, in deterministic order.
    pub max_pool: usize,
    /// Pool prefix on which all pairs are used as `B`.
    pub exhaustive_prefix: usize,
    pub random_subsets: usize,
    pub max_subset: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            depth: 2,
            max_pool: 16,
            exhaustive_prefix: 10,
            random_subsets: 24,
            max_subset: 4,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationFailure<E> {
    pub element: E,
    pub maps: (usize, usize),
    pub left: E,
    pub right: E,
}

/// `rk(ψ_j(A) | context) = lhs > rhs = rk(A | B)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularWitness<E> {
    /// 1-based position of `ψ_j` in the tested tuple.
    pub position: usize,
    pub a: Vec<E>,
    pub b: Vec<E>,
    pub lhs: usize,
    pub rhs: usize,
}

impl<E: fmt::Debug> fmt::Display for TriangularWitness<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "map {} with A = {:?}, B = {:?}: marginal rank {} exceeds rk(A|B) = {}",
            self.position, self.a, self.b, self.lhs, self.rhs
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartReport<E> {
    pub part: usize,
    /// `None` when no violation was found.
    pub triangular: Option<TriangularWitness<E>>,
    /// The same test for the part with the identity prepended.
    pub quasi_triangular: Option<TriangularWitness<E>>,
    pub pairs_tested: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemReport<E> {
    pub pool: Vec<E>,
    pub commutation: Vec<CommutationFailure<E>>,
    pub parts: Vec<PartReport<E>>,
    /// Map or oracle failures met while sampling.
    pub errors: Vec<String>,
}

impl<E> SystemReport<E> {
    pub fn commutes(&self) -> bool {
        self.commutation.is_empty()
    }

    pub fn triangular(&self, part: usize) -> bool {
        self.errors.is_empty() && self.parts[part].triangular.is_none()
    }

    pub fn quasi_triangular(&self, part: usize) -> bool {
        self.errors.is_empty() && self.parts[part].quasi_triangular.is_none()
    }

    pub fn all_triangular(&self) -> bool {
        self.commutes() && (0..self.parts.len()).all(|p| self.triangular(p))
    }

    pub fn all_quasi_triangular(&self) -> bool {
        self.commutes() && (0..self.parts.len()).all(|p| self.quasi_triangular(p))
    }
}

/// Commutation and per-part triangularity evidence on the orbit of `sample`.
pub fn check_system<M: Matroid>(
    sys: &OperatorSystem<M>,
    sample: &[M::Element],
    cfg: &CheckConfig,
) -> SystemReport<M::Element> {
    let mut report = SystemReport {
        pool: Vec::new(),
        commutation: Vec::new(),
        parts: Vec::new(),
        errors: Vec::new(),
    };
    report.pool = build_pool(sys, sample, cfg, &mut report.errors);
    report.commutation = check_commutation(sys, &report.pool, &mut report.errors);

    let subsets = sample_subsets(&report.pool, cfg);
    for part in 0..sys.k() {
        let tuple: Vec<Operator<M::Element>> = sys.maps()[sys.partition().range(part)].to_vec();
        let mut with_id = vec![Operator::identity()];
        with_id.extend(tuple.iter().cloned());
        let (triangular, pairs) = test_tuple(sys.matroid().as_ref(), &tuple, &report.pool, &subsets, &mut report.errors);
        let (quasi_triangular, _) = test_tuple(sys.matroid().as_ref(), &with_id, &report.pool, &subsets, &mut report.errors);
        report.parts.push(PartReport {
            part,
            triangular,
            quasi_triangular,
            pairs_tested: pairs,
        });
    }
    report
}

fn build_pool<M: Matroid>(
    sys: &OperatorSystem<M>,
    sample: &[M::Element],
    cfg: &CheckConfig,
    errors: &mut Vec<String>,
) -> Vec<M::Element> {
    let single = Partition::trivial(sys.m());
    let mut words: Vec<MultiIndex> = box_points(&[cfg.depth])
        .flat_map(|d| single.words(d.entries()))
        .collect();
    words.sort_by_key(|w| (w.total_degree(), w.clone()));
    let cache = OrbitCache::new();
    let mut seeds = sample.to_vec();
    seeds.sort_by_cached_key(|e| e.canonical_key());
    seeds.dedup();
    let mut seen = HashSet::new();
    let mut pool = Vec::new();
    for w in &words {
        for a in &seeds {
            match apply_word(sys, a, w, &cache) {
                Ok(x) => {
                    if seen.insert(x.clone()) {
                        pool.push(x);
                    }
                }
                Err(e) => errors.push(e.to_string()),
            }
            if pool.len() >= cfg.max_pool {
                return pool;
            }
        }
    }
    pool
}

fn check_commutation<M: Matroid>(
    sys: &OperatorSystem<M>,
    pool: &[M::Element],
    errors: &mut Vec<String>,
) -> Vec<CommutationFailure<M::Element>> {
    let mut out = Vec::new();
    let maps = sys.maps();
    for x in pool {
        for i in 0..maps.len() {
            for j in i + 1..maps.len() {
                let left = maps[i].apply(x).and_then(|y| maps[j].apply(&y));
                let right = maps[j].apply(x).and_then(|y| maps[i].apply(&y));
                match (left, right) {
                    (Ok(l), Ok(r)) if l != r => out.push(CommutationFailure {
                        element: x.clone(),
                        maps: (i, j),
                        left: l,
                        right: r,
                    }),
                    (Err(e), _) | (_, Err(e)) => errors.push(format!("maps {i} and {j} at {x:?}: {e}")),
                    _ => {}
                }
            }
        }
    }
    out
}

/// Candidate `B` sets: `∅`, singletons, pairs from a prefix, and random subsets.
fn sample_subsets<E: Clone>(pool: &[E], cfg: &CheckConfig) -> Vec<Vec<E>> {
    let mut out = vec![Vec::new()];
    out.extend(pool.iter().map(|x| vec![x.clone()]));
    let prefix = &pool[..pool.len().min(cfg.exhaustive_prefix)];
    for (i, x) in prefix.iter().enumerate() {
        for y in &prefix[i + 1..] {
            out.push(vec![x.clone(), y.clone()]);
        }
    }
    if pool.len() >= 2 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..cfg.random_subsets {
            let size = 2 + (rand::Rng::gen_range(&mut rng, 0..cfg.max_subset.max(2) - 1));
            let pick: Vec<E> = pool
                .choose_multiple(&mut rng, size.min(pool.len()))
                .cloned()
                .collect();
            out.push(pick);
        }
    }
    out
}

fn apply_all<E: Clone + fmt::Debug>(op: &Operator<E>, xs: &[E], errors: &mut Vec<String>) -> Option<Vec<E>> {
    let mut out = Vec::with_capacity(xs.len());
    for x in xs {
        match op.apply(x) {
            Ok(y) => out.push(y),
            Err(e) => {
                errors.push(format!("{} at {x:?}: {e}", op.name()));
                return None;
            }
        }
    }
    Some(out)
}

/// Tests the triangular inequality for `tuple` with `A` a pool singleton and
/// `B` each candidate subset. Returns the first witness and the number of
/// `(A, B)` pairs examined.
fn test_tuple<M: Matroid>(
    matroid: &M,
    tuple: &[Operator<M::Element>],
    pool: &[M::Element],
    subsets: &[Vec<M::Element>],
    errors: &mut Vec<String>,
) -> (Option<TriangularWitness<M::Element>>, usize) {
    let mut pairs = 0;
    for a_elem in pool {
        let a = vec![a_elem.clone()];
        for b in subsets {
            pairs += 1;
            let rhs = match relative_rank(matroid, &a, b) {
                Ok(r) => r,
                Err(e) => {
                    errors.push(e.to_string());
                    continue;
                }
            };
            let ab: Vec<_> = a.iter().chain(b).cloned().collect();
            let mut context = Vec::new();
            for (j, op) in tuple.iter().enumerate() {
                let (Some(img_a), Some(img_b)) = (apply_all(op, &a, errors), apply_all(op, b, errors)) else {
                    break;
                };
                let mut ctx = context.clone();
                ctx.extend(img_b);
                let lhs = match relative_rank(matroid, &img_a, &ctx) {
                    Ok(r) => r,
                    Err(e) => {
                        errors.push(e.to_string());
                        break;
                    }
                };
                if lhs > rhs {
                    return (
                        Some(TriangularWitness {
                            position: j + 1,
                            a,
                            b: b.clone(),
                            lhs,
                            rhs,
                        }),
                        pairs,
                    );
                }
                match apply_all(op, &ab, errors) {
                    Some(img) => context.extend(img),
                    None => break,
                }
            }
        }
    }
    (None, pairs)
}
