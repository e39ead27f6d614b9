//! Finitary matroids presented through rank oracles.
//!
//! A matroid is never materialised: every backend exposes an incremental
//! independence structure ([`Independence`]) and ranks are obtained greedily by
//! inserting elements one at a time. Ranks of finite sets, relative ranks and
//! localizations are all derived from that single primitive, so closure
//! membership is `relative_rank(&[x], set) == 0` rather than a separate method.

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use thiserror::Error;

/// A ground-set element.
///
/// Identity is the canonical key: two elements compare equal exactly when their
/// keys are equal, and keys are stable across runs.
pub trait Element: Clone + Eq + Ord + Hash + Debug + Send + Sync + 'static {
    fn canonical_key(&self) -> Vec<u8>;
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("element {element} is not in the ground set: {reason}")]
    ForeignElement { element: String, reason: String },
    #[error("basis is not independent: {0} depends on the elements before it")]
    DependentBasis(String),
    #[error("invalid matroid: {0}")]
    Invalid(String),
}

impl MatroidError {
    pub fn foreign(element: &impl Debug, reason: impl Into<String>) -> Self {
        MatroidError::ForeignElement {
            element: format!("{element:?}"),
            reason: reason.into(),
        }
    }
}

/// An independent set under construction.
///
/// `insert` adds `x` when it is independent of what has been inserted so far
/// and reports whether the rank went up. Implementations are cheap to clone so
/// that a basis of a fixed context can be reused by several workers.
pub trait Independence<E>: Clone + Send + Sync {
    fn insert(&mut self, x: &E) -> Result<bool, MatroidError>;

    /// Number of successful insertions.
    fn rank(&self) -> usize;
}

/// A rank oracle: pure, deterministic, and safe to share between threads.
pub trait Matroid: Send + Sync {
    type Element: Element;
    type Basis: Independence<Self::Element>;

    fn empty_basis(&self) -> Self::Basis;

    fn rank(&self, set: &[Self::Element]) -> Result<usize, MatroidError> {
        let mut basis = self.empty_basis();
        for x in set {
            basis.insert(x)?;
        }
        Ok(basis.rank())
    }
}

impl<M: Matroid> Matroid for Arc<M> {
    type Element = M::Element;
    type Basis = M::Basis;

    fn empty_basis(&self) -> Self::Basis {
        (**self).empty_basis()
    }

    fn rank(&self, set: &[Self::Element]) -> Result<usize, MatroidError> {
        (**self).rank(set)
    }
}

/// `rk(A | B) = rk(A ∪ B) - rk(B)`.
pub fn relative_rank<M: Matroid>(
    matroid: &M,
    a: &[M::Element],
    b: &[M::Element],
) -> Result<usize, MatroidError> {
    let mut basis = matroid.empty_basis();
    for x in b {
        basis.insert(x)?;
    }
    let before = basis.rank();
    for x in a {
        basis.insert(x)?;
    }
    Ok(basis.rank() - before)
}

pub fn in_closure<M: Matroid>(
    matroid: &M,
    x: &M::Element,
    set: &[M::Element],
) -> Result<bool, MatroidError> {
    Ok(relative_rank(matroid, std::slice::from_ref(x), set)? == 0)
}

/// Grows `basis` by the candidates that raise the rank, in input order.
pub fn extend_basis<M: Matroid>(
    matroid: &M,
    basis: &[M::Element],
    candidates: &[M::Element],
) -> Result<Vec<M::Element>, MatroidError> {
    let mut state = matroid.empty_basis();
    for x in basis {
        if !state.insert(x)? {
            return Err(MatroidError::DependentBasis(format!("{x:?}")));
        }
    }
    let mut out = basis.to_vec();
    for x in candidates {
        if state.insert(x)? {
            out.push(x.clone());
        }
    }
    Ok(out)
}

/// The localization of a matroid at a finite set `C`: `S ↦ rk(S | C)`.
#[derive(Debug)]
pub struct Localized<M: Matroid> {
    inner: Arc<M>,
    seeded: M::Basis,
    offset: usize,
}

pub fn localize<M: Matroid>(
    matroid: Arc<M>,
    context: &[M::Element],
) -> Result<Localized<M>, MatroidError> {
    let mut seeded = matroid.empty_basis();
    for x in context {
        seeded.insert(x)?;
    }
    let offset = seeded.rank();
    Ok(Localized {
        inner: matroid,
        seeded,
        offset,
    })
}

impl<M: Matroid> Localized<M> {
    pub fn inner(&self) -> &Arc<M> {
        &self.inner
    }
}

#[derive(Debug, Clone)]
pub struct LocalBasis<B> {
    inner: B,
    offset: usize,
}

impl<E, B: Independence<E>> Independence<E> for LocalBasis<B> {
    fn insert(&mut self, x: &E) -> Result<bool, MatroidError> {
        self.inner.insert(x)
    }

    fn rank(&self) -> usize {
        self.inner.rank() - self.offset
    }
}

impl<M: Matroid> Matroid for Localized<M> {
    type Element = M::Element;
    type Basis = LocalBasis<M::Basis>;

    fn empty_basis(&self) -> Self::Basis {
        LocalBasis {
            inner: self.seeded.clone(),
            offset: self.offset,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::graphic::{Edge, GraphicMatroid};
    use crate::backends::linear::{LinVec, LinearMatroid};
    use crate::backends::trivial::{IntVec, TrivialMatroid};

    fn ints(xs: &[i64]) -> Vec<IntVec> {
        xs.iter().map(|&x| IntVec::scalar(x)).collect()
    }

    fn plane(v: &[(i64, i64)]) -> Vec<LinVec> {
        v.iter().map(|&(a, b)| LinVec::from_ints(&[a, b])).collect()
    }

    #[test]
    fn rank_examples() {
        let triv = TrivialMatroid::new(1);
        assert_eq!(triv.rank(&ints(&[7, 9, 7])).unwrap(), 2);

        let lin = LinearMatroid::vector_space(2);
        assert_eq!(lin.rank(&plane(&[(1, 0), (0, 1), (1, 1)])).unwrap(), 2);

        let graph = GraphicMatroid;
        let triangle = [Edge::new(0, 1), Edge::new(1, 2), Edge::new(0, 2)];
        assert_eq!(graph.rank(&triangle).unwrap(), 2);
    }

    #[test]
    fn relative_rank_examples() {
        let triv = TrivialMatroid::new(1);
        assert_eq!(relative_rank(&triv, &ints(&[1, 2]), &ints(&[2, 3])).unwrap(), 1);
        assert_eq!(relative_rank(&triv, &[], &ints(&[2, 3])).unwrap(), 0);

        let lin = LinearMatroid::vector_space(2);
        let r = relative_rank(&lin, &plane(&[(1, 1)]), &plane(&[(1, 0), (0, 1)])).unwrap();
        assert_eq!(r, 0);
    }

    #[test]
    fn rank_rejects_foreign_elements() {
        let triv = TrivialMatroid::new(2);
        assert!(matches!(
            triv.rank(&ints(&[1])),
            Err(MatroidError::ForeignElement { .. })
        ));
    }

    #[test]
    fn localization_examples() {
        let triv = Arc::new(TrivialMatroid::new(1));
        let empty = localize(triv.clone(), &[]).unwrap();
        let s = ints(&[1, 4, 4, 9]);
        assert_eq!(empty.rank(&s).unwrap(), triv.rank(&s).unwrap());

        let at5 = localize(triv, &ints(&[5])).unwrap();
        assert_eq!(at5.rank(&ints(&[5, 6])).unwrap(), 1);

        // A spanning tree of the component {0,1,2,3} absorbs every edge inside it.
        let graph = Arc::new(GraphicMatroid);
        let tree = [Edge::new(0, 1), Edge::new(1, 2), Edge::new(2, 3)];
        let local = localize(graph, &tree).unwrap();
        assert_eq!(local.rank(&[Edge::new(0, 3)]).unwrap(), 0);
        assert_eq!(local.rank(&[Edge::new(1, 3), Edge::new(0, 2)]).unwrap(), 0);
        assert_eq!(local.rank(&[Edge::new(3, 4)]).unwrap(), 1);
    }

    #[test]
    fn nested_localization_matches_union() {
        let lin = Arc::new(LinearMatroid::vector_space(3));
        let c1 = vec![LinVec::from_ints(&[1, 1, 0])];
        let c2 = vec![LinVec::from_ints(&[0, 1, 1])];
        let nested = localize(Arc::new(localize(lin.clone(), &c1).unwrap()), &c2).unwrap();
        let both = localize(lin, &[c1, c2].concat()).unwrap();
        let probes = [
            vec![LinVec::from_ints(&[1, 0, 0])],
            vec![LinVec::from_ints(&[1, 0, -1])],
            vec![LinVec::from_ints(&[1, 2, 1]), LinVec::from_ints(&[0, 0, 1])],
        ];
        for s in &probes {
            assert_eq!(nested.rank(s).unwrap(), both.rank(s).unwrap());
        }
    }

    #[test]
    fn extend_basis_examples() {
        let lin = LinearMatroid::vector_space(2);
        let got = extend_basis(&lin, &[], &plane(&[(1, 0), (2, 0), (0, 1)])).unwrap();
        assert_eq!(got, plane(&[(1, 0), (0, 1)]));

        let base = plane(&[(1, 1)]);
        assert_eq!(extend_basis(&lin, &base, &[]).unwrap(), base);

        let triv = TrivialMatroid::new(1);
        let got = extend_basis(&triv, &ints(&[3]), &ints(&[1, 3, 2, 1])).unwrap();
        assert_eq!(got, ints(&[3, 1, 2]));
    }

    #[test]
    fn extend_basis_rejects_dependent_basis() {
        let lin = LinearMatroid::vector_space(2);
        let err = extend_basis(&lin, &plane(&[(1, 0), (2, 0)]), &[]).unwrap_err();
        assert!(matches!(err, MatroidError::DependentBasis(_)));
    }

    #[test]
    fn closure_membership_is_derived() {
        let lin = LinearMatroid::vector_space(2);
        let span = plane(&[(1, 2)]);
        assert!(in_closure(&lin, &LinVec::from_ints(&[-2, -4]), &span).unwrap());
        assert!(!in_closure(&lin, &LinVec::from_ints(&[0, 1]), &span).unwrap());
    }
}
