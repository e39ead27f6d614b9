//! Multivariate polynomials with rational coefficients, and interpolation from
//! generating-function numerators.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::multiindex::{binomial, Partition};

use super::numerator::GeneratingNumerator;

/// A polynomial in `Y_1, …, Y_k` with exact rational coefficients.
///
/// `degree_bound` is the per-variable bound the construction guarantees and
/// `threshold` is the point from which the polynomial is known to agree with
/// the rank function it was interpolated from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthPolynomial {
    k: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
    degree_bound: Vec<u32>,
    threshold: Vec<u32>,
}

impl GrowthPolynomial {
    pub fn zero(k: usize) -> Self {
        GrowthPolynomial {
            k,
            terms: BTreeMap::new(),
            degree_bound: vec![0; k],
            threshold: vec![0; k],
        }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, dropping zeros.
    pub fn from_terms(
        k: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>,
        degree_bound: Vec<u32>,
        threshold: Vec<u32>,
    ) -> Self {
        let mut map: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), k, "exponent length must equal the variable count");
            *map.entry(e).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        GrowthPolynomial {
            k,
            terms: map,
            degree_bound,
            threshold,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn degree_bound(&self) -> &[u32] {
        &self.degree_bound
    }

    pub fn threshold(&self) -> &[u32] {
        &self.threshold
    }

    pub fn with_threshold(mut self, threshold: Vec<u32>) -> Self {
        self.threshold = threshold;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: &[u32]) -> BigRational {
        self.terms.get(exponent).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Per-variable degrees actually attained.
    pub fn degrees(&self) -> Vec<u32> {
        let mut out = vec![0; self.k];
        for e in self.terms.keys() {
            for (d, &x) in out.iter_mut().zip(e) {
                *d = (*d).max(x);
            }
        }
        out
    }

    /// Whether every exponent lies below the declared degree bound.
    pub fn respects_degree_bound(&self) -> bool {
        self.terms
            .keys()
            .all(|e| e.iter().zip(&self.degree_bound).all(|(x, b)| x <= b))
    }

    pub fn eval(&self, point: &[i64]) -> BigRational {
        assert_eq!(point.len(), self.k, "point has wrong dimension");
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (&x, &p) in point.iter().zip(e) {
                t *= BigRational::from_integer(BigInt::from(x).pow(p));
            }
            acc += t;
        }
        acc
    }

    pub fn eval_u32(&self, point: &[u32]) -> BigRational {
        let p: Vec<i64> = point.iter().map(|&x| i64::from(x)).collect();
        self.eval(&p)
    }

    fn combine(&self, other: &GrowthPolynomial, sign: i32) -> GrowthPolynomial {
        assert_eq!(self.k, other.k, "polynomials in different variable counts");
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).chain(
            other.terms.iter().map(|(e, c)| {
                let c = if sign < 0 { -c.clone() } else { c.clone() };
                (e.clone(), c)
            }),
        );
        let join = |a: &[u32], b: &[u32]| a.iter().zip(b).map(|(x, y)| *x.max(y)).collect();
        GrowthPolynomial::from_terms(
            self.k,
            terms,
            join(&self.degree_bound, &other.degree_bound),
            join(&self.threshold, &other.threshold),
        )
    }

    /// Thresholds and degree bounds combine by coordinatewise max.
    pub fn add(&self, other: &GrowthPolynomial) -> GrowthPolynomial {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &GrowthPolynomial) -> GrowthPolynomial {
        self.combine(other, -1)
    }

    /// Terms in graded-lex descending order.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u64 = a.iter().map(|&x| u64::from(x)).sum();
            let db: u64 = b.iter().map(|&x| u64::from(x)).sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    fn variable(&self, i: usize) -> String {
        if self.k == 1 {
            "Y".into()
        } else {
            format!("Y{}", i + 1)
        }
    }
}

impl fmt::Display for GrowthPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let monomial: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        self.variable(i)
                    } else {
                        format!("{}^{p}", self.variable(i))
                    }
                })
                .collect();
            let coeff = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            match (monomial.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{}", monomial.join("*"))?,
                (false, false) => write!(f, "{coeff}*{}", monomial.join("*"))?,
            }
        }
        Ok(())
    }
}

/// `C(Y + shift, n)` as coefficients in `Y`, lowest degree first.
fn shifted_binomial(shift: i64, n: u32) -> Vec<BigRational> {
    let mut poly = vec![BigRational::one()];
    let mut fact = BigInt::one();
    for t in 0..i64::from(n) {
        // multiply by (Y + shift - t)
        let c = BigRational::from_integer(BigInt::from(shift - t));
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (i, p) in poly.iter().enumerate() {
            next[i] += p * &c;
            next[i + 1] += p.clone();
        }
        poly = next;
        fact *= BigInt::from(t + 1);
    }
    let fact = BigRational::from_integer(fact);
    poly.into_iter().map(|c| c / &fact).collect()
}

/// Expands `Σ_r̄ a_r̄ Π_i C(Y_i − r_i + d_i − 1, d_i − 1)`.
///
/// This is the polynomial that agrees with the coefficients of
/// `R(Ȳ) / Π_i (1 − Y_i)^{d_i}` at every `s̄ ⪰ ‖m̄‖`.
pub fn interpolate(numerator: &GeneratingNumerator, sizes: &[usize]) -> GrowthPolynomial {
    let k = sizes.len();
    assert_eq!(numerator.k(), k, "numerator and part sizes disagree on k");
    let mut terms: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
    for (r, a) in numerator.coeffs() {
        let factors: Vec<Vec<BigRational>> = r
            .iter()
            .zip(sizes)
            .map(|(&ri, &d)| shifted_binomial(d as i64 - 1 - i64::from(ri), d as u32 - 1))
            .collect();
        let mut partial: Vec<(Vec<u32>, BigRational)> =
            vec![(Vec::new(), BigRational::from_integer(a.clone()))];
        for f in &factors {
            let mut next = Vec::with_capacity(partial.len() * f.len());
            for (e, c) in &partial {
                for (p, fc) in f.iter().enumerate() {
                    if fc.is_zero() {
                        continue;
                    }
                    let mut e2 = e.clone();
                    e2.push(p as u32);
                    next.push((e2, c * fc));
                }
            }
            partial = next;
        }
        for (e, c) in partial {
            *terms.entry(e).or_insert_with(BigRational::zero) += c;
        }
    }
    GrowthPolynomial::from_terms(
        k,
        terms,
        sizes.iter().map(|&d| d as u32 - 1).collect(),
        numerator.cap().to_vec(),
    )
}

/// Terms that are maximal for the lexicographic order induced by some
/// permutation of the variables, in ascending exponent order.
pub fn dominant_terms(p: &GrowthPolynomial) -> Vec<(Vec<u32>, BigRational)> {
    if p.terms.is_empty() {
        return Vec::new();
    }
    let mut found: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
    let mut perm: Vec<usize> = (0..p.k).collect();
    loop {
        let best = p
            .terms
            .keys()
            .max_by(|a, b| perm.iter().map(|&i| a[i]).cmp(perm.iter().map(|&i| b[i])))
            .expect("nonempty");
        found.insert(best.clone(), p.terms[best].clone());
        if !next_permutation(&mut perm) {
            break;
        }
    }
    found.into_iter().collect()
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitMode {
    Graded,
    Cumulative,
}

/// Number of words with part degree `s̄` (graded) or `⪯ s̄` (cumulative).
pub fn word_count(partition: &Partition, s: &[u32], mode: OrbitMode) -> BigUint {
    partition
        .sizes()
        .iter()
        .zip(s)
        .map(|(&d, &si)| {
            let (si, d) = (u64::from(si), d as u64);
            match mode {
                OrbitMode::Graded => binomial(si + d - 1, d - 1),
                OrbitMode::Cumulative => binomial(si + d, d),
            }
        })
        .product()
}
