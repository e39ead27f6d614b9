//! The trivial matroid on integer vectors: every set is independent.

use std::collections::HashSet;
use std::sync::Arc;

use crate::matroid::{Element, Independence, Matroid, MatroidError};
use crate::multiindex::Partition;
use crate::operators::{Operator, OperatorSystem, PartFlag};

use super::{encode_ints, BackendError};

/// A point of `ℤ^n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVec(pub Vec<i64>);

impl IntVec {
    pub fn scalar(x: i64) -> Self {
        IntVec(vec![x])
    }

    pub fn zero(dim: usize) -> Self {
        IntVec(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Element for IntVec {
    fn canonical_key(&self) -> Vec<u8> {
        encode_ints(b'z', self.0.iter().copied())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrivialMatroid {
    dim: usize,
}

impl TrivialMatroid {
    pub fn new(dim: usize) -> Self {
        TrivialMatroid { dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

#[derive(Debug, Clone)]
pub struct DistinctSet {
    dim: usize,
    seen: HashSet<IntVec>,
}

impl Independence<IntVec> for DistinctSet {
    fn insert(&mut self, x: &IntVec) -> Result<bool, MatroidError> {
        if x.dim() != self.dim {
            return Err(MatroidError::foreign(
                x,
                format!("expected a vector of dimension {}", self.dim),
            ));
        }
        Ok(self.seen.insert(x.clone()))
    }

    fn rank(&self) -> usize {
        self.seen.len()
    }
}

impl Matroid for TrivialMatroid {
    type Element = IntVec;
    type Basis = DistinctSet;

    fn empty_basis(&self) -> DistinctSet {
        DistinctSet {
            dim: self.dim,
            seen: HashSet::new(),
        }
    }
}

/// `x ↦ x + v`.
pub fn translation(v: IntVec) -> Operator<IntVec> {
    let name = format!("+{:?}", v.0);
    Operator::new(name, move |x: &IntVec| {
        if x.dim() != v.dim() {
            return Err(crate::operators::MapError::Undefined(format!(
                "cannot translate {x:?} by {v:?}"
            )));
        }
        Ok(x.add(&v))
    })
}

/// One translation per element of each `B_i`, grouped into parts by `i`.
///
/// Duplicate elements inside one `B_i` are dropped, so part `i` has
/// `|B_i|` maps.
pub fn make_sumset_system(sets: &[Vec<IntVec>]) -> Result<OperatorSystem<TrivialMatroid>, BackendError> {
    let dim = sets
        .iter()
        .flatten()
        .next()
        .map(IntVec::dim)
        .ok_or_else(|| BackendError::Input("sumset system needs at least one nonempty set".into()))?;
    let mut maps = Vec::new();
    let mut sizes = Vec::new();
    for (i, set) in sets.iter().enumerate() {
        if set.is_empty() {
            return Err(BackendError::Input(format!("set B{} is empty", i + 1)));
        }
        let mut elems = set.clone();
        elems.sort();
        elems.dedup();
        if let Some(bad) = elems.iter().find(|v| v.dim() != dim) {
            return Err(BackendError::Input(format!(
                "dimension mismatch: {bad:?} in B{} has dimension {}, expected {dim}",
                i + 1,
                bad.dim()
            )));
        }
        sizes.push(elems.len());
        maps.extend(elems.into_iter().map(translation));
    }
    Ok(OperatorSystem::uniform(
        Arc::new(TrivialMatroid::new(dim)),
        maps,
        Partition::new(sizes)?,
        PartFlag::Triangular,
    )?)
}
