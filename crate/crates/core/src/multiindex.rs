//! Multi-indices in ℕ^m, partitions of the coordinates, and word enumeration.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigUint;
use num::One;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IndexError {
    #[error("length mismatch: expected {expected} coordinates, got {got}")]
    Length { expected: usize, got: usize },
    #[error("invalid partition {0:?}: every part needs at least one coordinate")]
    EmptyPart(Vec<usize>),
    #[error("a partition needs at least one part")]
    NoParts,
}

/// A tuple `r̄ ∈ ℕ^m`.
///
/// `Ord` is the lexicographic order with emphasis on the *last* coordinate:
/// `r̄ < s̄` iff at the last position where they differ `r_i < s_i`. Tuples
/// of different lengths are ordered by length first. The product order `⪯`
/// is [`MultiIndex::precedes`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(m: usize) -> Self {
        MultiIndex(vec![0; m])
    }

    pub fn unit(m: usize, i: usize) -> Self {
        let mut v = vec![0; m];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn plus_unit(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v[i] += 1;
        MultiIndex(v)
    }

    pub fn minus_unit(&self, i: usize) -> Option<Self> {
        let mut v = self.0.clone();
        v[i] = v[i].checked_sub(1)?;
        Some(MultiIndex(v))
    }

    /// Product order: `self ⪯ other`.
    pub fn precedes(&self, other: &MultiIndex) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Coordinatewise maximum.
    pub fn join(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl From<&[u32]> for MultiIndex {
    fn from(v: &[u32]) -> Self {
        MultiIndex(v.to_vec())
    }
}

/// Lexicographic comparison with emphasis on the last coordinate.
pub fn lex_compare(r: &MultiIndex, s: &MultiIndex) -> Result<Ordering, IndexError> {
    if r.len() != s.len() {
        return Err(IndexError::Length {
            expected: r.len(),
            got: s.len(),
        });
    }
    Ok(r.cmp(s))
}

/// A grouping of `m` coordinates into consecutive blocks of sizes `d_1..d_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    sizes: Vec<usize>,
    starts: Vec<usize>,
}

impl Partition {
    pub fn new(sizes: Vec<usize>) -> Result<Self, IndexError> {
        if sizes.is_empty() {
            return Err(IndexError::NoParts);
        }
        if sizes.contains(&0) {
            return Err(IndexError::EmptyPart(sizes));
        }
        let starts = sizes
            .iter()
            .scan(0, |acc, &d| {
                let s = *acc;
                *acc += d;
                Some(s)
            })
            .collect();
        Ok(Partition { sizes, starts })
    }

    /// One part holding all `m` coordinates.
    pub fn trivial(m: usize) -> Self {
        Partition::new(vec![m]).expect("m >= 1")
    }

    pub fn singletons(m: usize) -> Self {
        Partition::new(vec![1; m]).expect("m >= 1")
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn m(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn range(&self, part: usize) -> std::ops::Range<usize> {
        self.starts[part]..self.starts[part] + self.sizes[part]
    }

    pub fn part_of(&self, coord: usize) -> usize {
        self.starts.partition_point(|&s| s <= coord) - 1
    }

    /// `‖r̄‖`: the per-part sums.
    pub fn part_degree(&self, r: &MultiIndex) -> Result<Vec<u32>, IndexError> {
        if r.len() != self.m() {
            return Err(IndexError::Length {
                expected: self.m(),
                got: r.len(),
            });
        }
        Ok((0..self.k())
            .map(|i| r.entries()[self.range(i)].iter().sum())
            .collect())
    }

    /// The partition of the augmented system: every part grows by one.
    pub fn augmented(&self) -> Partition {
        Partition::new(self.sizes.iter().map(|d| d + 1).collect()).expect("sizes stay positive")
    }

    /// All `r̄` with `‖r̄‖ = s̄`, sorted by [`MultiIndex`]'s lexicographic order.
    pub fn words(&self, s: &[u32]) -> Vec<MultiIndex> {
        assert_eq!(s.len(), self.k(), "part degree has wrong length");
        let per_part: Vec<Vec<Vec<u32>>> = self
            .sizes
            .iter()
            .zip(s)
            .map(|(&d, &n)| compositions(n, d))
            .collect();
        let mut out = vec![Vec::with_capacity(self.m())];
        for comps in &per_part {
            let mut next = Vec::with_capacity(out.len() * comps.len());
            for prefix in &out {
                for c in comps {
                    let mut w = prefix.clone();
                    w.extend_from_slice(c);
                    next.push(w);
                }
            }
            out = next;
        }
        let mut words: Vec<MultiIndex> = out.into_iter().map(MultiIndex).collect();
        words.sort();
        words
    }
}

/// Compositions of `n` into `parts` nonnegative summands.
pub fn compositions(n: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(n: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for x in 0..=n {
            prefix.push(x);
            rec(n - x, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Iterates over every `ū ⪯ bound` in row-major order (first coordinate slowest).
pub fn box_points(bound: &[u32]) -> impl Iterator<Item = MultiIndex> + '_ {
    let total: usize = bound.iter().map(|&b| b as usize + 1).product();
    (0..total).map(move |mut idx| {
        let mut v = vec![0u32; bound.len()];
        for (slot, &b) in v.iter_mut().zip(bound).rev() {
            let radix = b as usize + 1;
            *slot = (idx % radix) as u32;
            idx /= radix;
        }
        MultiIndex(v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::from(v)
    }

    #[test]
    fn part_degree_examples() {
        let p = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(p.part_degree(&mi(&[2, 0, 1])).unwrap(), vec![2, 1]);
        assert_eq!(p.part_degree(&MultiIndex::zero(3)).unwrap(), vec![0, 0]);
        let t = Partition::trivial(3);
        assert_eq!(t.part_degree(&mi(&[4, 1, 2])).unwrap(), vec![7]);
        assert!(matches!(
            p.part_degree(&mi(&[1, 1])),
            Err(IndexError::Length { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn lex_examples() {
        assert_eq!(lex_compare(&mi(&[1, 0]), &mi(&[0, 1])).unwrap(), Ordering::Less);
        assert_eq!(lex_compare(&mi(&[0, 0]), &mi(&[0, 0])).unwrap(), Ordering::Equal);
        assert_eq!(lex_compare(&mi(&[5, 1]), &mi(&[0, 2])).unwrap(), Ordering::Less);
        assert!(lex_compare(&mi(&[1]), &mi(&[1, 0])).is_err());
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        let p = Partition::new(vec![2, 3, 1]).unwrap();
        assert_eq!(p.m(), 6);
        assert_eq!(p.range(1), 2..5);
        assert_eq!((0..6).map(|c| p.part_of(c)).collect::<Vec<_>>(), vec![0, 0, 1, 1, 1, 2]);
        assert_eq!(p.augmented().sizes(), &[3, 4, 2]);
    }

    #[test]
    fn words_are_sorted_and_counted() {
        let p = Partition::new(vec![2, 1]).unwrap();
        let w = p.words(&[2, 1]);
        assert_eq!(w.len(), 3);
        assert_eq!(w, vec![mi(&[2, 0, 1]), mi(&[1, 1, 1]), mi(&[0, 2, 1])]);
        let t = Partition::trivial(3);
        for s in 0..6u32 {
            let ws = t.words(&[s]);
            assert_eq!(ws.len() as u64, binomial(u64::from(s) + 2, 2).try_into().unwrap());
            assert!(ws.windows(2).all(|p| p[0] < p[1]));
            assert!(ws.iter().all(|w| w.total_degree() == u64::from(s)));
        }
    }

    #[test]
    fn box_points_cover_box() {
        let pts: Vec<_> = box_points(&[1, 2]).collect();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], mi(&[0, 0]));
        assert_eq!(pts[1], mi(&[0, 1]));
        assert_eq!(pts[5], mi(&[1, 2]));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(3, 5), BigUint::from(0u32));
        assert_eq!(binomial(0, 0), BigUint::from(1u32));
    }
}
