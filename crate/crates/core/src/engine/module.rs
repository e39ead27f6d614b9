//! Realizing a decreasing table as a monomial module.
//!
//! For `1 ≤ n ≤ f(0̄)` the set `I_n = {ū : f(ū) ≥ n}` is downward closed, so
//! `⊕_n K[x̄]·g_n / (x^v̄ g_n : v̄ ∉ I_n)` has, in part degree `s̄`, exactly
//! `Σ_n |{ū ∈ I_n : ‖ū‖ = s̄}| = Σ_{‖ū‖=s̄} f(ū)` basis monomials.

use std::collections::BTreeMap;

use crate::multiindex::{box_points, MultiIndex};

use super::table::DecreasingTable;
use super::GrowthError;

/// One downward-closed level set, restricted to the table box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelIdeal {
    pub level: u32,
    /// Maximal elements of `I_n` inside the box.
    pub frontier: Vec<MultiIndex>,
    /// Minimal elements of the complement inside the box.
    pub complement_generators: Vec<MultiIndex>,
}

impl LevelIdeal {
    pub fn contains(&self, u: &MultiIndex) -> bool {
        self.frontier.iter().any(|g| u.precedes(g))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelCount {
    pub module: u64,
    pub table: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialModule {
    pub ideals: Vec<LevelIdeal>,
    /// Per part degree `s̄` whose words all lie in the box.
    pub counts: BTreeMap<Vec<u32>, LevelCount>,
}

impl MonomialModule {
    pub fn mismatches(&self) -> Vec<&Vec<u32>> {
        self.counts
            .iter()
            .filter(|(_, c)| c.module != c.table)
            .map(|(s, _)| s)
            .collect()
    }

    pub fn is_consistent(&self) -> bool {
        self.mismatches().is_empty()
    }

    /// `(generator, monomial)` relations presenting the module, generator
    /// `n − 1` carrying `I_n`.
    pub fn relations(&self) -> Vec<(u32, Vec<u32>)> {
        self.ideals
            .iter()
            .flat_map(|ideal| {
                ideal
                    .complement_generators
                    .iter()
                    .map(move |g| (ideal.level - 1, g.entries().to_vec()))
            })
            .collect()
    }
}

pub fn realize_monomial_module(table: &DecreasingTable) -> Result<MonomialModule, GrowthError> {
    if let Some((u, v)) = table.violations().first() {
        return Err(GrowthError::Precondition(format!(
            "the table is not decreasing: f{u:?} < f{v:?}"
        )));
    }
    let m = table.m();
    let value = |u: &MultiIndex| table.get(u);
    let mut ideals = Vec::new();
    for n in 1..=table.at_origin() {
        let mut frontier = Vec::new();
        let mut complement_generators = Vec::new();
        for (u, f) in table.points() {
            if f >= n {
                let maximal = (0..m).all(|i| value(&u.plus_unit(i)).map_or(true, |g| g < n));
                if maximal {
                    frontier.push(u);
                }
            } else {
                let minimal = (0..m)
                    .filter_map(|i| u.minus_unit(i))
                    .all(|p| value(&p).expect("inside box") >= n);
                if minimal {
                    complement_generators.push(u);
                }
            }
        }
        ideals.push(LevelIdeal {
            level: n,
            frontier,
            complement_generators,
        });
    }

    let p = table.partition();
    let mut counts = BTreeMap::new();
    for s in box_points(&table.full_levels()) {
        let words = p.words(s.entries());
        let module = ideals
            .iter()
            .map(|ideal| words.iter().filter(|w| ideal.contains(w)).count() as u64)
            .sum();
        let graded = table.graded_sum(s.entries()).expect("full level");
        counts.insert(
            s.into_vec(),
            LevelCount {
                module,
                table: graded,
            },
        );
    }
    Ok(MonomialModule { ideals, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::polynomial::{word_count, OrbitMode};
    use crate::multiindex::Partition;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::from(v)
    }

    #[test]
    fn constant_one() {
        let p = Partition::trivial(2);
        let t = DecreasingTable::from_fn(mi(&[4, 4]), p.clone(), |_| 1);
        let module = realize_monomial_module(&t).unwrap();
        assert_eq!(module.ideals.len(), 1);
        assert_eq!(module.ideals[0].frontier, vec![mi(&[4, 4])]);
        assert!(module.ideals[0].complement_generators.is_empty());
        for (s, c) in &module.counts {
            let wc = word_count(&p, s, OrbitMode::Graded);
            assert_eq!(num::BigUint::from(c.module), wc);
        }
        assert!(module.is_consistent());
    }

    #[test]
    fn two_one_zero() {
        let t = DecreasingTable::from_fn(mi(&[5]), Partition::trivial(1), |u| {
            [2, 1].get(u.entries()[0] as usize).copied().unwrap_or(0)
        });
        let module = realize_monomial_module(&t).unwrap();
        assert_eq!(module.ideals[0].frontier, vec![mi(&[1])]);
        assert_eq!(module.ideals[1].frontier, vec![mi(&[0])]);
        let sums: Vec<u64> = module.counts.values().map(|c| c.module).collect();
        assert_eq!(sums, vec![2, 1, 0, 0, 0, 0]);
        assert_eq!(module.relations(), vec![(0, vec![2]), (1, vec![1])]);
    }

    #[test]
    fn zero_function() {
        let t = DecreasingTable::from_fn(mi(&[3, 3]), Partition::singletons(2), |_| 0);
        let module = realize_monomial_module(&t).unwrap();
        assert!(module.ideals.is_empty());
        assert!(module.counts.values().all(|c| c.module == 0 && c.table == 0));
    }
}
