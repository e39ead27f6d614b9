//! Commuting operator systems, word application, and orbits.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use thiserror::Error;

use crate::matroid::{Element, Matroid};
use crate::multiindex::{IndexError, MultiIndex, Partition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("map undefined: {0}")]
    Undefined(String),
    #[error("index {index} lies beyond the generated depth {limit}")]
    OutOfBox { index: u64, limit: u64 },
    #[error("vertex map is not simplicial on {simplex:?} (image {image:?} is not a simplex)")]
    NotSimplicial { simplex: Vec<i64>, image: Vec<i64> },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SystemError {
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error("{maps} maps do not fit a partition of {m} coordinates")]
    MapCount { maps: usize, m: usize },
    #[error("{flags} part flags given for {parts} parts")]
    FlagCount { flags: usize, parts: usize },
    #[error("invalid subtuple selection: {0}")]
    Selection(String),
}

/// Failure of a word application, naming the word.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("applying word {word:?}: {source}")]
pub struct OrbitError {
    pub word: MultiIndex,
    #[source]
    pub source: MapError,
}

pub type MapFn<E> = Arc<dyn Fn(&E) -> Result<E, MapError> + Send + Sync>;

#[derive(Clone)]
enum OpKind<E> {
    Identity,
    Map(MapFn<E>),
}

/// A named self-map of the ground set.
#[derive(Clone)]
pub struct Operator<E> {
    name: String,
    kind: OpKind<E>,
}

impl<E: Clone> Operator<E> {
    pub fn new(
        name: impl Into<String>,
        f: impl Fn(&E) -> Result<E, MapError> + Send + Sync + 'static,
    ) -> Self {
        Operator {
            name: name.into(),
            kind: OpKind::Map(Arc::new(f)),
        }
    }

    pub fn identity() -> Self {
        Operator {
            name: "id".into(),
            kind: OpKind::Identity,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.kind, OpKind::Identity)
    }

    pub fn apply(&self, x: &E) -> Result<E, MapError> {
        match &self.kind {
            OpKind::Identity => Ok(x.clone()),
            OpKind::Map(f) => f(x),
        }
    }
}

impl<E> fmt::Debug for Operator<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Operator({})", self.name)
    }
}

/// What the caller asserts about one part of the partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartFlag {
    Triangular,
    QuasiTriangular,
    Undeclared,
}

impl PartFlag {
    pub fn is_triangular(self) -> bool {
        self == PartFlag::Triangular
    }

    /// Triangular parts are quasi-triangular as well.
    pub fn is_quasi_triangular(self) -> bool {
        matches!(self, PartFlag::Triangular | PartFlag::QuasiTriangular)
    }
}

/// `m` commuting maps over a matroid, grouped into `k` parts.
pub struct OperatorSystem<M: Matroid> {
    matroid: Arc<M>,
    maps: Vec<Operator<M::Element>>,
    partition: Partition,
    flags: Vec<PartFlag>,
}

impl<M: Matroid> Clone for OperatorSystem<M> {
    fn clone(&self) -> Self {
        OperatorSystem {
            matroid: self.matroid.clone(),
            maps: self.maps.clone(),
            partition: self.partition.clone(),
            flags: self.flags.clone(),
        }
    }
}

impl<M: Matroid> fmt::Debug for OperatorSystem<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OperatorSystem")
            .field("maps", &self.maps)
            .field("partition", &self.partition.sizes())
            .field("flags", &self.flags)
            .finish()
    }
}

impl<M: Matroid> OperatorSystem<M> {
    pub fn new(
        matroid: Arc<M>,
        maps: Vec<Operator<M::Element>>,
        partition: Partition,
        flags: Vec<PartFlag>,
    ) -> Result<Self, SystemError> {
        if maps.len() != partition.m() {
            return Err(SystemError::MapCount {
                maps: maps.len(),
                m: partition.m(),
            });
        }
        if flags.len() != partition.k() {
            return Err(SystemError::FlagCount {
                flags: flags.len(),
                parts: partition.k(),
            });
        }
        Ok(OperatorSystem {
            matroid,
            maps,
            partition,
            flags,
        })
    }

    /// Every part gets the same flag.
    pub fn uniform(
        matroid: Arc<M>,
        maps: Vec<Operator<M::Element>>,
        partition: Partition,
        flag: PartFlag,
    ) -> Result<Self, SystemError> {
        let k = partition.k();
        Self::new(matroid, maps, partition, vec![flag; k])
    }

    pub fn matroid(&self) -> &Arc<M> {
        &self.matroid
    }

    pub fn maps(&self) -> &[Operator<M::Element>] {
        &self.maps
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn flags(&self) -> &[PartFlag] {
        &self.flags
    }

    pub fn m(&self) -> usize {
        self.maps.len()
    }

    pub fn k(&self) -> usize {
        self.partition.k()
    }

    pub fn with_flags(mut self, flags: Vec<PartFlag>) -> Result<Self, SystemError> {
        if flags.len() != self.k() {
            return Err(SystemError::FlagCount {
                flags: flags.len(),
                parts: self.k(),
            });
        }
        self.flags = flags;
        Ok(self)
    }

    /// Same maps and partition over a different matroid on the same elements.
    pub fn with_matroid<N>(&self, matroid: Arc<N>) -> OperatorSystem<N>
    where
        N: Matroid<Element = M::Element>,
    {
        OperatorSystem {
            matroid,
            maps: self.maps.clone(),
            partition: self.partition.clone(),
            flags: self.flags.clone(),
        }
    }

    /// The augmented system: the identity map prepended to every part.
    ///
    /// A quasi-triangular part becomes a triangular one.
    pub fn augment(&self) -> Self {
        let mut maps = Vec::with_capacity(self.m() + self.k());
        for part in 0..self.k() {
            maps.push(Operator::identity());
            maps.extend(self.maps[self.partition.range(part)].iter().cloned());
        }
        let flags = self
            .flags
            .iter()
            .map(|f| match f {
                PartFlag::QuasiTriangular | PartFlag::Triangular => PartFlag::Triangular,
                PartFlag::Undeclared => PartFlag::Undeclared,
            })
            .collect();
        OperatorSystem {
            matroid: self.matroid.clone(),
            maps,
            partition: self.partition.augmented(),
            flags,
        }
    }

    /// The subsystem keeping, in part `i`, the maps at `selection[i]`
    /// (indices local to the part, strictly increasing).
    pub fn subsystem(&self, selection: &[Vec<usize>]) -> Result<Self, SystemError> {
        if selection.len() != self.k() {
            return Err(SystemError::Selection(format!(
                "{} parts selected from a system with {} parts",
                selection.len(),
                self.k()
            )));
        }
        let mut maps = Vec::new();
        let mut sizes = Vec::new();
        for (part, picks) in selection.iter().enumerate() {
            let range = self.partition.range(part);
            if picks.is_empty() {
                return Err(SystemError::Selection(format!("part {} selects no map", part + 1)));
            }
            if picks.windows(2).any(|w| w[0] >= w[1]) {
                return Err(SystemError::Selection(format!(
                    "part {} selection {picks:?} is not strictly increasing",
                    part + 1
                )));
            }
            if let Some(&bad) = picks.iter().find(|&&j| j >= range.len()) {
                return Err(SystemError::Selection(format!(
                    "part {} has {} maps, index {bad} is out of range",
                    part + 1,
                    range.len()
                )));
            }
            maps.extend(picks.iter().map(|&j| self.maps[range.start + j].clone()));
            sizes.push(picks.len());
        }
        OperatorSystem::new(
            self.matroid.clone(),
            maps,
            Partition::new(sizes)?,
            self.flags.clone(),
        )
    }
}

/// Memo of `(seed, r̄) ↦ φ^r̄(seed)`, safe for concurrent insert-if-absent.
pub struct OrbitCache<E: Element> {
    map: DashMap<(E, MultiIndex), E>,
}

impl<E: Element> Default for OrbitCache<E> {
    fn default() -> Self {
        OrbitCache {
            map: DashMap::new(),
        }
    }
}

impl<E: Element> OrbitCache<E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, seed: &E, word: &MultiIndex) -> Option<E> {
        self.map.get(&(seed.clone(), word.clone())).map(|v| v.clone())
    }
}

/// `φ^r̄(a)`, memoized.
///
/// Walks down from `r̄` (decrementing the first nonzero coordinate) until a
/// cached word or `0̄` is found, then applies the maps back up.
pub fn apply_word<M: Matroid>(
    sys: &OperatorSystem<M>,
    a: &M::Element,
    word: &MultiIndex,
    cache: &OrbitCache<M::Element>,
) -> Result<M::Element, OrbitError> {
    assert_eq!(word.len(), sys.m(), "word length must equal the number of maps");
    let mut path = Vec::new();
    let mut cur = word.clone();
    let mut value = loop {
        if cur.is_zero() {
            break a.clone();
        }
        if let Some(v) = cache.get(a, &cur) {
            break v;
        }
        let i = cur.entries().iter().position(|&x| x > 0).expect("nonzero word");
        path.push(i);
        cur = cur.minus_unit(i).expect("positive coordinate");
    };
    for &i in path.iter().rev() {
        cur = cur.plus_unit(i);
        value = sys.maps[i].apply(&value).map_err(|source| OrbitError {
            word: cur.clone(),
            source,
        })?;
        cache.map.insert((a.clone(), cur.clone()), value.clone());
    }
    Ok(value)
}

fn sorted_seeds<E: Element>(a: &[E]) -> Vec<E> {
    let mut seeds = a.to_vec();
    seeds.sort_by_cached_key(|e| e.canonical_key());
    seeds.dedup();
    seeds
}

fn collect_orbit<M: Matroid>(
    sys: &OperatorSystem<M>,
    a: &[M::Element],
    words: &[MultiIndex],
    cache: &OrbitCache<M::Element>,
) -> Result<Vec<M::Element>, OrbitError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for seed in sorted_seeds(a) {
        for w in words {
            let x = apply_word(sys, &seed, w, cache)?;
            if seen.insert(x.clone()) {
                out.push(x);
            }
        }
    }
    Ok(out)
}

/// `Φ^{(s̄)}(A)`, deduplicated, in (seed key, lex word) order.
pub fn graded_orbit<M: Matroid>(
    sys: &OperatorSystem<M>,
    a: &[M::Element],
    s: &[u32],
    cache: &OrbitCache<M::Element>,
) -> Result<Vec<M::Element>, OrbitError> {
    collect_orbit(sys, a, &sys.partition.words(s), cache)
}

/// `Φ^{⪯(s̄)}(A)`.
pub fn cumulative_orbit<M: Matroid>(
    sys: &OperatorSystem<M>,
    a: &[M::Element],
    s: &[u32],
    cache: &OrbitCache<M::Element>,
) -> Result<Vec<M::Element>, OrbitError> {
    let mut words: Vec<MultiIndex> = crate::multiindex::box_points(s)
        .flat_map(|lower| sys.partition.words(lower.entries()))
        .collect();
    words.sort();
    collect_orbit(sys, a, &words, cache)
}
