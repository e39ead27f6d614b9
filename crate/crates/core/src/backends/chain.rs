//! Simplicial chains: per-dimension count and boundary-rank oracles.
//!
//! The `n`-cells of a complex are its `n`-simplices (sorted vertex lists). Two
//! matroids live on them: the count oracle (the free rank of the generated
//! subgroup of `C_n`) and the boundary oracle (the rank of their images under
//! `∂_n`). Betti numbers of finite subcomplexes are
//! `b_n = rk_n − rk^∂_n − rk^∂_{n+1}`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use num::rational::BigRational;
use num::BigInt;

use crate::engine::{
    cumulative_polynomial, dimension_polynomial, GrowthError, GrowthPolynomial, GrowthResult,
    OrbitMode, StabilizationConfig,
};
use crate::matroid::{Element, Independence, Matroid, MatroidError};
use crate::multiindex::Partition;
use crate::operators::{MapError, Operator, OperatorSystem, PartFlag};
use crate::sparse::{Echelon, SparseVec};

use super::{encode_ints, BackendError};

/// An oriented simplex, or the zero chain (image of a collapsed simplex).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChainCell {
    Zero,
    Simplex(Vec<i64>),
}

impl ChainCell {
    /// Sorts and validates the vertex list.
    pub fn simplex(mut vertices: Vec<i64>) -> Result<Self, BackendError> {
        vertices.sort_unstable();
        if vertices.is_empty() || vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(BackendError::Input(format!(
                "{vertices:?} is not a simplex: vertices must be distinct and nonempty"
            )));
        }
        Ok(ChainCell::Simplex(vertices))
    }

    pub fn vertices(&self) -> &[i64] {
        match self {
            ChainCell::Zero => &[],
            ChainCell::Simplex(v) => v,
        }
    }

    /// `None` for the zero chain.
    pub fn dim(&self) -> Option<usize> {
        match self {
            ChainCell::Zero => None,
            ChainCell::Simplex(v) => Some(v.len() - 1),
        }
    }
}

impl Element for ChainCell {
    fn canonical_key(&self) -> Vec<u8> {
        match self {
            ChainCell::Zero => vec![b'0'],
            ChainCell::Simplex(v) => encode_ints(b's', v.iter().copied()),
        }
    }
}

/// Codimension-one faces with their boundary signs.
pub fn boundary(simplex: &[i64]) -> Vec<(Vec<i64>, i64)> {
    if simplex.len() < 2 {
        return Vec::new();
    }
    (0..simplex.len())
        .map(|i| {
            let mut face = simplex.to_vec();
            face.remove(i);
            (face, if i % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

fn all_faces(simplex: &[i64]) -> Vec<Vec<i64>> {
    let n = simplex.len();
    (1u64..(1 << n))
        .map(|mask| {
            (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| simplex[i])
                .collect()
        })
        .collect()
}

/// A simplicial complex closed under faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Complex {
    Finite(BTreeSet<Vec<i64>>),
    /// Translates of `base` by every multiple of `period`.
    Periodic { base: BTreeSet<Vec<i64>>, period: i64 },
}

impl Complex {
    /// The complex generated by `simplices` (all faces are added).
    pub fn generated_by(simplices: &[Vec<i64>]) -> Result<Self, BackendError> {
        let mut set = BTreeSet::new();
        for s in simplices {
            let ChainCell::Simplex(v) = ChainCell::simplex(s.clone())? else {
                unreachable!()
            };
            set.extend(all_faces(&v));
        }
        Ok(Complex::Finite(set))
    }

    /// The periodic complex generated by `base` and its translates.
    pub fn periodic(base: &[Vec<i64>], period: i64) -> Result<Self, BackendError> {
        if period <= 0 {
            return Err(BackendError::Input(format!("period {period} must be positive")));
        }
        let Complex::Finite(set) = Self::generated_by(base)? else {
            unreachable!()
        };
        Ok(Complex::Periodic { base: set, period })
    }

    pub fn contains(&self, simplex: &[i64]) -> bool {
        match self {
            Complex::Finite(set) => set.contains(simplex),
            Complex::Periodic { base, period } => {
                let Some(&first) = simplex.first() else {
                    return false;
                };
                base.iter().filter(|b| b.len() == simplex.len()).any(|b| {
                    let diff = first - b[0];
                    diff % period == 0 && b.iter().zip(simplex).all(|(x, y)| x + diff == *y)
                })
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainOracle {
    /// `rk_n`: number of distinct `n`-simplices.
    Count,
    /// `rk^∂_n`: rank of their boundaries.
    Boundary,
}

#[derive(Debug, Clone)]
pub struct ChainMatroid {
    complex: Arc<Complex>,
    dim: usize,
    oracle: ChainOracle,
}

impl ChainMatroid {
    pub fn new(complex: Arc<Complex>, dim: usize, oracle: ChainOracle) -> Self {
        ChainMatroid {
            complex,
            dim,
            oracle,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn oracle(&self) -> ChainOracle {
        self.oracle
    }

    fn check(&self, x: &ChainCell) -> Result<(), MatroidError> {
        match x {
            ChainCell::Zero => Ok(()),
            ChainCell::Simplex(v) if v.len() != self.dim + 1 => Err(MatroidError::foreign(
                x,
                format!("expected a {}-simplex", self.dim),
            )),
            ChainCell::Simplex(v) if !self.complex.contains(v) => {
                Err(MatroidError::foreign(x, "not a simplex of the complex"))
            }
            ChainCell::Simplex(_) => Ok(()),
        }
    }
}

#[derive(Debug, Clone)]
enum ChainState {
    Count(HashSet<Vec<i64>>),
    Boundary(Echelon<Vec<i64>>),
}

#[derive(Debug, Clone)]
pub struct ChainBasis {
    matroid: ChainMatroid,
    state: ChainState,
}

impl Independence<ChainCell> for ChainBasis {
    fn insert(&mut self, x: &ChainCell) -> Result<bool, MatroidError> {
        self.matroid.check(x)?;
        let ChainCell::Simplex(v) = x else {
            return Ok(false);
        };
        Ok(match &mut self.state {
            ChainState::Count(seen) => seen.insert(v.clone()),
            ChainState::Boundary(ech) => {
                let chain = SparseVec::from_terms(
                    boundary(v)
                        .into_iter()
                        .map(|(f, s)| (f, BigRational::from_integer(BigInt::from(s)))),
                );
                ech.insert(&chain)
            }
        })
    }

    fn rank(&self) -> usize {
        match &self.state {
            ChainState::Count(seen) => seen.len(),
            ChainState::Boundary(ech) => ech.rank(),
        }
    }
}

impl Matroid for ChainMatroid {
    type Element = ChainCell;
    type Basis = ChainBasis;

    fn empty_basis(&self) -> ChainBasis {
        let state = match self.oracle {
            ChainOracle::Count => ChainState::Count(HashSet::new()),
            ChainOracle::Boundary => ChainState::Boundary(Echelon::new()),
        };
        ChainBasis {
            matroid: self.clone(),
            state,
        }
    }
}

/// A self-map of the vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexMap {
    Shift(i64),
    Affine { mul: i64, add: i64 },
    /// Listed vertices move, the rest are fixed.
    Table(BTreeMap<i64, i64>),
}

impl VertexMap {
    pub fn apply(&self, x: i64) -> i64 {
        match self {
            VertexMap::Shift(k) => x + k,
            VertexMap::Affine { mul, add } => mul * x + add,
            VertexMap::Table(t) => t.get(&x).copied().unwrap_or(x),
        }
    }

    pub fn name(&self) -> String {
        match self {
            VertexMap::Shift(k) => format!("v+{k}"),
            VertexMap::Affine { mul, add } => format!("{mul}v+{add}"),
            VertexMap::Table(_) => "table".into(),
        }
    }
}

/// The chain map induced by a vertex map; collapsed simplices go to zero.
pub fn simplicial_map(complex: Arc<Complex>, map: VertexMap) -> Operator<ChainCell> {
    Operator::new(map.name(), move |x: &ChainCell| {
        let ChainCell::Simplex(v) = x else {
            return Ok(ChainCell::Zero);
        };
        let mut image: Vec<i64> = v.iter().map(|&u| map.apply(u)).collect();
        image.sort_unstable();
        let mut distinct = image.clone();
        distinct.dedup();
        if !complex.contains(&distinct) {
            return Err(MapError::NotSimplicial {
                simplex: v.clone(),
                image: distinct,
            });
        }
        if distinct.len() < image.len() {
            Ok(ChainCell::Zero)
        } else {
            Ok(ChainCell::Simplex(image))
        }
    })
}

/// The system of induced chain maps on `n`-cells, under the given oracle.
pub fn chain_system(
    complex: Arc<Complex>,
    maps: &[VertexMap],
    partition: Partition,
    dim: usize,
    oracle: ChainOracle,
) -> Result<OperatorSystem<ChainMatroid>, BackendError> {
    let ops = maps
        .iter()
        .map(|m| simplicial_map(complex.clone(), m.clone()))
        .collect();
    Ok(OperatorSystem::uniform(
        Arc::new(ChainMatroid::new(complex, dim, oracle)),
        ops,
        partition,
        PartFlag::Triangular,
    )?)
}

/// Polynomials for the three ranks and the Betti number they combine into.
#[derive(Debug, Clone)]
pub struct BettiPolynomials {
    pub cells: GrowthResult,
    pub boundaries: GrowthResult,
    pub next_boundaries: GrowthResult,
    /// `cells − boundaries − next_boundaries`, thresholded at the max of the three.
    pub betti: GrowthPolynomial,
}

impl BettiPolynomials {
    pub fn parts(&self) -> [&GrowthResult; 3] {
        [&self.cells, &self.boundaries, &self.next_boundaries]
    }
}

/// The `n`-th Betti polynomial of `Φ^{(s̄)}(A)` (graded) or `Φ^{⪯(s̄)}(A)`
/// (cumulative), where `A` is the subcomplex generated by `seed`.
pub fn betti_polynomials(
    complex: Arc<Complex>,
    maps: &[VertexMap],
    partition: Partition,
    seed: &[Vec<i64>],
    n: usize,
    mode: OrbitMode,
    cfg: &StabilizationConfig,
) -> Result<BettiPolynomials, GrowthError> {
    let sub = Complex::generated_by(seed).map_err(|e| GrowthError::Input(e.to_string()))?;
    let Complex::Finite(cells) = sub else {
        unreachable!()
    };
    if let Some(bad) = cells.iter().find(|s| !complex.contains(s)) {
        return Err(GrowthError::Input(format!(
            "seed simplex {bad:?} is not in the complex"
        )));
    }
    let of_dim = |d: usize| -> Vec<ChainCell> {
        cells
            .iter()
            .filter(|s| s.len() == d + 1)
            .map(|s| ChainCell::Simplex(s.clone()))
            .collect()
    };
    let run = |dim: usize, oracle: ChainOracle| -> Result<GrowthResult, GrowthError> {
        let sys = chain_system(complex.clone(), maps, partition.clone(), dim, oracle)
            .map_err(|e| GrowthError::Input(e.to_string()))?;
        let a = of_dim(dim);
        match mode {
            OrbitMode::Graded => dimension_polynomial(&sys, &a, &[], cfg),
            OrbitMode::Cumulative => cumulative_polynomial(&sys, &a, &[], cfg),
        }
    };
    let cells_p = run(n, ChainOracle::Count)?;
    let bd = run(n, ChainOracle::Boundary)?;
    let next = run(n + 1, ChainOracle::Boundary)?;
    let betti = cells_p
        .polynomial
        .sub(&bd.polynomial)
        .sub(&next.polynomial);
    Ok(BettiPolynomials {
        cells: cells_p,
        boundaries: bd,
        next_boundaries: next,
        betti,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hollow_triangle() -> Arc<Complex> {
        Arc::new(Complex::generated_by(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap())
    }

    #[test]
    fn boundary_signs() {
        assert_eq!(
            boundary(&[0, 1, 2]),
            vec![(vec![1, 2], 1), (vec![0, 2], -1), (vec![0, 1], 1)]
        );
        assert!(boundary(&[4]).is_empty());
    }

    #[test]
    fn cycle_ranks() {
        let c = hollow_triangle();
        let edges: Vec<_> = [[0, 1], [1, 2], [0, 2]]
            .iter()
            .map(|e| ChainCell::Simplex(e.to_vec()))
            .collect();
        let count = ChainMatroid::new(c.clone(), 1, ChainOracle::Count);
        let bd = ChainMatroid::new(c, 1, ChainOracle::Boundary);
        assert_eq!(count.rank(&edges).unwrap(), 3);
        assert_eq!(bd.rank(&edges).unwrap(), 2);
    }

    #[test]
    fn periodic_membership() {
        let path = Complex::periodic(&[vec![0, 1]], 1).unwrap();
        assert!(path.contains(&[5, 6]));
        assert!(path.contains(&[-3]));
        assert!(!path.contains(&[5, 7]));
        let tri = Complex::periodic(&[vec![0, 1, 2]], 3).unwrap();
        assert!(tri.contains(&[3, 5]));
        assert!(!tri.contains(&[2, 3]));
    }

    #[test]
    fn collapsing_map_gives_zero_and_bad_map_errors() {
        let c = hollow_triangle();
        let collapse = simplicial_map(c.clone(), VertexMap::Table([(1, 0)].into_iter().collect()));
        assert_eq!(collapse.apply(&ChainCell::Simplex(vec![0, 1])).unwrap(), ChainCell::Zero);
        let bad = simplicial_map(c, VertexMap::Shift(5));
        assert!(matches!(
            bad.apply(&ChainCell::Simplex(vec![0, 1])),
            Err(MapError::NotSimplicial { .. })
        ));
    }
}
