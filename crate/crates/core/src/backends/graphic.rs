//! Graphic matroids: edges of a graph on integer vertices, rank by union-find.

use std::collections::HashMap;
use std::sync::Arc;

use crate::matroid::{Element, Independence, Matroid, MatroidError};
use crate::multiindex::Partition;
use crate::operators::{MapError, Operator, OperatorSystem, PartFlag};

use super::encode_ints;

/// An undirected edge, stored with `u <= v`. Loops are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: i64,
    v: i64,
}

impl Edge {
    pub fn new(a: i64, b: i64) -> Self {
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn endpoints(&self) -> (i64, i64) {
        (self.u, self.v)
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

impl Element for Edge {
    fn canonical_key(&self) -> Vec<u8> {
        encode_ints(b'e', [self.u, self.v].into_iter())
    }
}

/// The graphic matroid of the complete graph with loops on `ℤ`; every finite
/// edge set is a subgraph of it.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GraphicMatroid;

#[derive(Debug, Clone, Default)]
pub struct Forest {
    parent: HashMap<i64, i64>,
    rank: usize,
}

impl Forest {
    fn find(&mut self, x: i64) -> i64 {
        let mut root = x;
        while let Some(&p) = self.parent.get(&root) {
            if p == root {
                break;
            }
            root = p;
        }
        let mut cur = x;
        while cur != root {
            let next = self.parent.insert(cur, root).unwrap_or(root);
            cur = next;
        }
        root
    }
}

impl Independence<Edge> for Forest {
    fn insert(&mut self, e: &Edge) -> Result<bool, MatroidError> {
        let (a, b) = (self.find(e.u), self.find(e.v));
        if a == b {
            return Ok(false);
        }
        self.parent.insert(a, b);
        self.parent.entry(b).or_insert(b);
        self.rank += 1;
        Ok(true)
    }

    fn rank(&self) -> usize {
        self.rank
    }
}

impl Matroid for GraphicMatroid {
    type Element = Edge;
    type Basis = Forest;

    fn empty_basis(&self) -> Forest {
        Forest::default()
    }
}

/// The edge map induced by a vertex map; `None` means undefined at that vertex.
pub fn vertex_map(
    name: impl Into<String>,
    f: impl Fn(i64) -> Option<i64> + Send + Sync + 'static,
) -> Operator<Edge> {
    Operator::new(name, move |e: &Edge| {
        let image = |x: i64| f(x).ok_or_else(|| MapError::Undefined(format!("vertex {x}")));
        Ok(Edge::new(image(e.u)?, image(e.v)?))
    })
}

/// Edge names of the oscillating example: three letters per gadget index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
}

/// An infinite chain of alternating triangles and 3-paths between hub
/// vertices, with edges `a_i, b_i, c_i`.
///
/// Even indices `2j` form the triangle `a = (H_j, H_{j+1})`, `b = (L_j, H_j)`,
/// `c = (H_{j+1}, L_j)`; odd indices `2j+1` form the path
/// `a = (H_j, U_j)`, `b = (U_j, U'_j)`, `c = (U'_j, H_{j+1})`. Vertex ids are
/// `H_j = 4j`, `L_j = 4j+1`, `U_j = 4j+2`, `U'_j = 4j+3`. The shift
/// `x_i ↦ x_{i+1}` is not induced by any vertex map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oscillator {
    limit: u64,
}

impl Oscillator {
    /// Edges with index `> limit` are outside the generated graph.
    pub fn new(limit: u64) -> Self {
        Oscillator { limit }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn edge(letter: Letter, i: u64) -> Edge {
        let j = (i / 2) as i64;
        let (h0, l, u1, u2, h1) = (4 * j, 4 * j + 1, 4 * j + 2, 4 * j + 3, 4 * j + 4);
        match (i % 2, letter) {
            (0, Letter::A) => Edge::new(h0, h1),
            (0, Letter::B) => Edge::new(l, h0),
            (0, Letter::C) => Edge::new(h1, l),
            (_, Letter::A) => Edge::new(h0, u1),
            (_, Letter::B) => Edge::new(u1, u2),
            (_, Letter::C) => Edge::new(u2, h1),
        }
    }

    pub fn label(e: &Edge) -> Option<(Letter, u64)> {
        let (u, v) = e.endpoints();
        if u < 0 {
            return None;
        }
        let j = (u / 4) as u64;
        match (u % 4, v - u) {
            (0, 4) => Some((Letter::A, 2 * j)),
            (0, 1) => Some((Letter::B, 2 * j)),
            (1, 3) => Some((Letter::C, 2 * j)),
            (0, 2) => Some((Letter::A, 2 * j + 1)),
            (2, 1) => Some((Letter::B, 2 * j + 1)),
            (3, 1) => Some((Letter::C, 2 * j + 1)),
            _ => None,
        }
    }

    /// `{a_i, b_i, c_i}`.
    pub fn gadget(i: u64) -> Vec<Edge> {
        [Letter::A, Letter::B, Letter::C]
            .into_iter()
            .map(|l| Self::edge(l, i))
            .collect()
    }

    pub fn shift(&self) -> Operator<Edge> {
        let limit = self.limit;
        Operator::new("shift", move |e: &Edge| {
            let (letter, i) = Self::label(e)
                .ok_or_else(|| MapError::Undefined(format!("{e:?} is not an edge of the graph")))?;
            if i + 1 > limit {
                return Err(MapError::OutOfBox {
                    index: i + 1,
                    limit,
                });
            }
            Ok(Self::edge(letter, i + 1))
        })
    }
}

/// The single shift on the oscillating graph, flagged quasi-triangular, with
/// seed `{a_0, b_0, c_0}`.
pub fn make_counterexample_graph(limit: u64) -> (OperatorSystem<GraphicMatroid>, Vec<Edge>) {
    let osc = Oscillator::new(limit);
    let sys = OperatorSystem::uniform(
        Arc::new(GraphicMatroid),
        vec![osc.shift()],
        Partition::trivial(1),
        PartFlag::QuasiTriangular,
    )
    .expect("one map, one part");
    (sys, Oscillator::gadget(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loops_have_rank_zero() {
        assert_eq!(GraphicMatroid.rank(&[Edge::new(3, 3)]).unwrap(), 0);
        assert_eq!(GraphicMatroid.rank(&[Edge::new(3, 3), Edge::new(3, 4)]).unwrap(), 1);
    }

    #[test]
    fn oscillator_labels_round_trip() {
        for i in 0..12 {
            for l in [Letter::A, Letter::B, Letter::C] {
                assert_eq!(Oscillator::label(&Oscillator::edge(l, i)), Some((l, i)));
            }
        }
        assert_eq!(Oscillator::label(&Edge::new(0, 3)), None);
    }

    #[test]
    fn gadget_ranks_alternate() {
        let ranks: Vec<_> = (0..6)
            .map(|t| GraphicMatroid.rank(&Oscillator::gadget(t)).unwrap())
            .collect();
        assert_eq!(ranks, vec![2, 3, 2, 3, 2, 3]);
    }

    #[test]
    fn shift_stops_at_limit() {
        let osc = Oscillator::new(3);
        let op = osc.shift();
        assert_eq!(op.apply(&Oscillator::edge(Letter::B, 2)).unwrap(), Oscillator::edge(Letter::B, 3));
        assert!(matches!(
            op.apply(&Oscillator::edge(Letter::B, 3)),
            Err(MapError::OutOfBox { index: 4, limit: 3 })
        ));
    }
}
