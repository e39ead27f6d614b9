//! Counting lattice points of a downward-closed set `I ⊆ ℕ^m`.
//!
//! `I` is given by the antichain of minimal elements of its complement, and
//! `rank(S) = |S ∩ I|`, the trivial matroid localized at `ℕ^m \ I`.

use std::collections::HashSet;
use std::sync::Arc;

use crate::matroid::{Element, Independence, Matroid, MatroidError};
use crate::multiindex::{MultiIndex, Partition};
use crate::operators::{Operator, OperatorSystem, PartFlag};

use super::{encode_ints, BackendError};

impl Element for MultiIndex {
    fn canonical_key(&self) -> Vec<u8> {
        encode_ints(b'n', self.entries().iter().map(|&x| i64::from(x)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealCountMatroid {
    m: usize,
    complement: Arc<Vec<MultiIndex>>,
}

impl IdealCountMatroid {
    pub fn new(m: usize, complement: Vec<MultiIndex>) -> Result<Self, BackendError> {
        if m == 0 {
            return Err(BackendError::Input("ideal lives in ℕ^0".into()));
        }
        if let Some(bad) = complement.iter().find(|g| g.len() != m) {
            return Err(BackendError::Input(format!(
                "antichain element {bad:?} does not have {m} coordinates"
            )));
        }
        for (i, g) in complement.iter().enumerate() {
            for h in &complement[i + 1..] {
                if g.precedes(h) || h.precedes(g) {
                    return Err(BackendError::Input(format!(
                        "{g:?} and {h:?} are comparable, so the complement generators are not an antichain"
                    )));
                }
            }
        }
        Ok(IdealCountMatroid {
            m,
            complement: Arc::new(complement),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn complement(&self) -> &[MultiIndex] {
        &self.complement
    }

    pub fn contains(&self, u: &MultiIndex) -> bool {
        !self.complement.iter().any(|g| g.precedes(u))
    }
}

#[derive(Debug, Clone)]
pub struct IdealBasis {
    ideal: IdealCountMatroid,
    seen: HashSet<MultiIndex>,
}

impl Independence<MultiIndex> for IdealBasis {
    fn insert(&mut self, x: &MultiIndex) -> Result<bool, MatroidError> {
        if x.len() != self.ideal.m {
            return Err(MatroidError::foreign(
                x,
                format!("expected {} coordinates", self.ideal.m),
            ));
        }
        Ok(self.ideal.contains(x) && self.seen.insert(x.clone()))
    }

    fn rank(&self) -> usize {
        self.seen.len()
    }
}

impl Matroid for IdealCountMatroid {
    type Element = MultiIndex;
    type Basis = IdealBasis;

    fn empty_basis(&self) -> IdealBasis {
        IdealBasis {
            ideal: self.clone(),
            seen: HashSet::new(),
        }
    }
}

/// Coordinate-increment maps over the ideal-count matroid, with seed `{0̄}`.
pub fn make_ideal_system(
    complement: Vec<MultiIndex>,
    partition: Partition,
) -> Result<(OperatorSystem<IdealCountMatroid>, Vec<MultiIndex>), BackendError> {
    let m = partition.m();
    let matroid = IdealCountMatroid::new(m, complement)?;
    let maps = (0..m)
        .map(|i| {
            Operator::new(format!("e{}", i + 1), move |u: &MultiIndex| {
                if u.len() <= i {
                    return Err(crate::operators::MapError::Undefined(format!(
                        "{u:?} has no coordinate {}",
                        i + 1
                    )));
                }
                Ok(u.plus_unit(i))
            })
        })
        .collect();
    let sys = OperatorSystem::uniform(Arc::new(matroid), maps, partition, PartFlag::Triangular)?;
    Ok((sys, vec![MultiIndex::zero(m)]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::from(v)
    }

    #[test]
    fn membership_and_rank() {
        let ideal = IdealCountMatroid::new(2, vec![mi(&[2, 0])]).unwrap();
        assert!(ideal.contains(&mi(&[1, 7])));
        assert!(!ideal.contains(&mi(&[2, 1])));
        let s = [mi(&[0, 0]), mi(&[1, 3]), mi(&[2, 0]), mi(&[0, 0])];
        assert_eq!(ideal.rank(&s).unwrap(), 2);
    }

    #[test]
    fn antichain_is_validated() {
        assert!(IdealCountMatroid::new(2, vec![mi(&[1, 0]), mi(&[2, 1])]).is_err());
        assert!(IdealCountMatroid::new(2, vec![mi(&[1, 0, 0])]).is_err());
        assert!(IdealCountMatroid::new(2, vec![mi(&[1, 0]), mi(&[0, 1])]).is_ok());
    }
}
