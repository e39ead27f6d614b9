//! Matroids given by explicit circuits, graded by degree in `ℕ^m`.
//!
//! The ground set is `ℕ^m × {0, …, width−1}`: `width` atoms of every degree.
//! The matroid is the direct sum over degrees; a degree either has an explicit
//! circuit family or falls back to the default rule.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::matroid::{Element, Independence, Matroid, MatroidError};
use crate::multiindex::{MultiIndex, Partition};
use crate::operators::{Operator, OperatorSystem, PartFlag};

use super::{encode_ints, BackendError};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub degree: MultiIndex,
    pub index: u32,
}

impl Atom {
    pub fn new(degree: impl Into<MultiIndex>, index: u32) -> Self {
        Atom {
            degree: degree.into(),
            index,
        }
    }
}

impl Element for Atom {
    fn canonical_key(&self) -> Vec<u8> {
        let mut key = encode_ints(b'c', self.degree.entries().iter().map(|&x| i64::from(x)));
        key.extend_from_slice(&self.index.to_be_bytes());
        key
    }
}

/// Circuits of degrees without an explicit family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircuitRule {
    /// No circuits.
    Free,
    /// Every `(r+1)`-subset is a circuit.
    Uniform(u32),
}

pub type Family = Vec<BTreeSet<u32>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitMatroid {
    m: usize,
    width: u32,
    families: Arc<BTreeMap<MultiIndex, Family>>,
    default: CircuitRule,
}

impl CircuitMatroid {
    /// Validates each family: nonempty circuits inside `0..width`, an
    /// inclusion antichain, and closed under circuit elimination.
    pub fn new(
        m: usize,
        width: u32,
        families: BTreeMap<MultiIndex, Family>,
        default: CircuitRule,
    ) -> Result<Self, BackendError> {
        for (degree, family) in &families {
            if degree.len() != m {
                return Err(BackendError::Input(format!(
                    "degree {degree:?} does not have {m} coordinates"
                )));
            }
            validate_family(family, width)
                .map_err(|w| MatroidError::Invalid(format!("degree {degree:?}: {w}")))?;
        }
        Ok(CircuitMatroid {
            m,
            width,
            families: Arc::new(families),
            default,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    fn dependent(&self, degree: &MultiIndex, set: &BTreeSet<u32>) -> bool {
        match self.families.get(degree) {
            Some(family) => family.iter().any(|c| c.is_subset(set)),
            None => match self.default {
                CircuitRule::Free => false,
                CircuitRule::Uniform(r) => set.len() > r as usize,
            },
        }
    }
}

fn validate_family(family: &Family, width: u32) -> Result<(), String> {
    for c in family {
        if c.is_empty() {
            return Err("the empty set cannot be a circuit".into());
        }
        if let Some(&bad) = c.iter().find(|&&x| x >= width) {
            return Err(format!("circuit {c:?} uses atom {bad} outside 0..{width}"));
        }
    }
    for (i, c1) in family.iter().enumerate() {
        for c2 in &family[i + 1..] {
            if c1.is_subset(c2) || c2.is_subset(c1) {
                return Err(format!("circuits {c1:?} and {c2:?} are nested"));
            }
            for e in c1.intersection(c2) {
                let mut rest: BTreeSet<u32> = c1.union(c2).copied().collect();
                rest.remove(e);
                if !family.iter().any(|c3| c3.is_subset(&rest)) {
                    return Err(format!(
                        "circuit elimination fails for {c1:?}, {c2:?} at {e}: no circuit inside {rest:?}"
                    ));
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct CircuitBasis {
    matroid: CircuitMatroid,
    chosen: HashMap<MultiIndex, BTreeSet<u32>>,
    rank: usize,
}

impl Independence<Atom> for CircuitBasis {
    fn insert(&mut self, x: &Atom) -> Result<bool, MatroidError> {
        if x.degree.len() != self.matroid.m || x.index >= self.matroid.width {
            return Err(MatroidError::foreign(
                x,
                format!(
                    "expected degree in ℕ^{} and index below {}",
                    self.matroid.m, self.matroid.width
                ),
            ));
        }
        let set = self.chosen.entry(x.degree.clone()).or_default();
        if set.contains(&x.index) {
            return Ok(false);
        }
        set.insert(x.index);
        if self.matroid.dependent(&x.degree, set) {
            set.remove(&x.index);
            return Ok(false);
        }
        self.rank += 1;
        Ok(true)
    }

    fn rank(&self) -> usize {
        self.rank
    }
}

impl Matroid for CircuitMatroid {
    type Element = Atom;
    type Basis = CircuitBasis;

    fn empty_basis(&self) -> CircuitBasis {
        CircuitBasis {
            matroid: self.clone(),
            chosen: HashMap::new(),
            rank: 0,
        }
    }
}

/// Degree shifts `(r̄, j) ↦ (r̄ + ê_i, j)`, one per coordinate.
pub fn make_circuit_system(
    matroid: CircuitMatroid,
    partition: Partition,
) -> Result<OperatorSystem<CircuitMatroid>, BackendError> {
    if partition.m() != matroid.m {
        return Err(BackendError::Input(format!(
            "partition covers {} maps but degrees have {} coordinates",
            partition.m(),
            matroid.m
        )));
    }
    let maps = (0..matroid.m)
        .map(|i| {
            Operator::new(format!("x{}", i + 1), move |a: &Atom| {
                Ok(Atom {
                    degree: a.degree.plus_unit(i),
                    index: a.index,
                })
            })
        })
        .collect();
    Ok(OperatorSystem::uniform(
        Arc::new(matroid),
        maps,
        partition,
        PartFlag::Triangular,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[u32]) -> BTreeSet<u32> {
        xs.iter().copied().collect()
    }

    fn atoms(deg: &[u32], idx: &[u32]) -> Vec<Atom> {
        idx.iter().map(|&i| Atom::new(deg.to_vec(), i)).collect()
    }

    #[test]
    fn free_rule_counts() {
        let m = CircuitMatroid::new(1, 4, BTreeMap::new(), CircuitRule::Free).unwrap();
        assert_eq!(m.rank(&atoms(&[0], &[0, 1, 2, 2])).unwrap(), 3);
    }

    #[test]
    fn uniform_rules() {
        let lines = CircuitMatroid::new(1, 4, BTreeMap::new(), CircuitRule::Uniform(1)).unwrap();
        let mut s = atoms(&[0], &[0, 1, 2]);
        s.extend(atoms(&[1], &[3]));
        assert_eq!(lines.rank(&s).unwrap(), 2);

        let u23 = CircuitMatroid::new(
            1,
            3,
            [(MultiIndex::from(vec![0]), vec![set(&[0, 1, 2])])].into_iter().collect(),
            CircuitRule::Free,
        )
        .unwrap();
        assert_eq!(u23.rank(&atoms(&[0], &[0, 1, 2])).unwrap(), 2);
        assert_eq!(u23.rank(&atoms(&[0], &[2])).unwrap(), 1);
    }

    #[test]
    fn invalid_families_are_rejected() {
        let bad = |family: Family| {
            CircuitMatroid::new(
                1,
                4,
                [(MultiIndex::from(vec![0]), family)].into_iter().collect(),
                CircuitRule::Free,
            )
        };
        assert!(bad(vec![set(&[0, 1]), set(&[0, 1, 2])]).is_err());
        // {0,1} and {1,2} force a circuit inside {0,2}.
        assert!(matches!(
            bad(vec![set(&[0, 1]), set(&[1, 2])]),
            Err(BackendError::Matroid(MatroidError::Invalid(_)))
        ));
        assert!(bad(vec![set(&[0, 1]), set(&[1, 2]), set(&[0, 2])]).is_ok());
        assert!(bad(vec![set(&[5])]).is_err());
    }
}
