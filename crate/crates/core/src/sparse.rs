//! Sparse vectors with exact rational entries and incremental row reduction.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

/// A finitely supported vector over ℚ. Zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SparseVec<K: Ord> {
    entries: BTreeMap<K, BigRational>,
}

impl<K: Ord + Clone> SparseVec<K> {
    pub fn new() -> Self {
        SparseVec {
            entries: BTreeMap::new(),
        }
    }

    pub fn unit(key: K) -> Self {
        let mut v = Self::new();
        v.entries.insert(key, BigRational::one());
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, BigRational)>) -> Self {
        let mut v = Self::new();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    pub fn add_term(&mut self, key: K, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.entries.get_mut(&key) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.entries.remove(&key);
                }
            }
            None => {
                self.entries.insert(key, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &K) -> Option<&BigRational> {
        self.entries.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigRational)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.entries.keys()
    }

    /// Applies a basis map extended linearly; keys sent to `None` vanish.
    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Option<K2>) -> SparseVec<K2> {
        let mut out = SparseVec::new();
        for (k, c) in &self.entries {
            if let Some(k2) = f(k) {
                out.add_term(k2, c.clone());
            }
        }
        out
    }

    /// Clears denominators and divides out the content, keeping the sign.
    fn primitive(&self) -> BTreeMap<K, BigInt> {
        let lcm = self
            .entries
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: BTreeMap<K, BigInt> = self
            .entries
            .iter()
            .map(|(k, c)| (k.clone(), c.numer() * (&lcm / c.denom())))
            .collect();
        make_primitive(&mut ints);
        ints
    }
}

fn make_primitive<K>(v: &mut BTreeMap<K, BigInt>) {
    let g = v.values().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in v.values_mut() {
            *c = &*c / &g;
        }
    }
}

/// Row-echelon form maintained one vector at a time.
///
/// Rows are stored fraction-free (primitive integer vectors) and keyed by
/// their largest key, so a reduction step only ever touches smaller keys.
#[derive(Debug, Clone)]
pub struct Echelon<K: Ord> {
    rows: BTreeMap<K, BTreeMap<K, BigInt>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts `v`; returns `true` iff `v` is outside the current span.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        if v.is_zero() {
            return false;
        }
        let mut w = v.primitive();
        loop {
            let (lead, c) = match w.last_key_value() {
                Some((k, c)) => (k.clone(), c.clone()),
                None => return false,
            };
            let Some(row) = self.rows.get(&lead) else {
                if w.values().next_back().is_some_and(|c| c.is_negative()) {
                    for c in w.values_mut() {
                        *c = -&*c;
                    }
                }
                self.rows.insert(lead, w);
                return true;
            };
            let r = &row[&lead];
            let g = r.gcd(&c);
            let (rs, cs) = (r / &g, &c / &g);
            // w <- rs * w - cs * row, which cancels the lead entry.
            if !rs.is_one() {
                for x in w.values_mut() {
                    *x = &*x * &rs;
                }
            }
            for (k, x) in row {
                let delta = &cs * x;
                let remove = match w.get_mut(k) {
                    Some(y) => {
                        *y -= delta;
                        y.is_zero()
                    }
                    None => {
                        w.insert(k.clone(), -delta);
                        false
                    }
                };
                if remove {
                    w.remove(k);
                }
            }
            make_primitive(&mut w);
        }
    }
}

/// Rank of a list of vectors, by incremental elimination.
pub fn rank_of<K: Ord + Clone>(vectors: &[SparseVec<K>]) -> usize {
    let mut e = Echelon::new();
    vectors.iter().filter(|v| e.insert(v)).count()
}
