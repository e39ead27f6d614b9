//! Executable rank axioms, used to fuzz backends.

use std::collections::HashSet;
use std::fmt;

use rand::Rng;

use crate::matroid::{Matroid, MatroidError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    EmptyRank,
    Bounded,
    UnitIncrease,
    Monotone,
    Submodular,
    Exchange,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub detail: String,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.axiom, self.detail)
    }
}

/// Checks every rank axiom on the pair `(S, T)`.
///
/// Unit increase is checked for each `x ∈ T` added to `S`; exchange for each
/// ordered pair of distinct elements of `T` over `S`: if `a ∉ cl(S)` and
/// `a ∈ cl(S ∪ {b})` then `b ∈ cl(S ∪ {a})`.
pub fn check_rank_axioms<M: Matroid>(
    matroid: &M,
    s: &[M::Element],
    t: &[M::Element],
) -> Result<Vec<AxiomViolation>, MatroidError> {
    let mut out = Vec::new();
    let mut fail = |axiom, detail: String| out.push(AxiomViolation { axiom, detail });
    let rank = |xs: &[M::Element]| matroid.rank(xs);
    let with = |base: &[M::Element], extra: &[&M::Element]| -> Vec<M::Element> {
        base.iter().cloned().chain(extra.iter().map(|x| (*x).clone())).collect()
    };

    let empty = rank(&[])?;
    if empty != 0 {
        fail(Axiom::EmptyRank, format!("rank(∅) = {empty}"));
    }

    let rs = rank(s)?;
    let rt = rank(t)?;
    let distinct = |xs: &[M::Element]| xs.iter().collect::<HashSet<_>>().len();
    if rs > distinct(s) {
        fail(Axiom::Bounded, format!("rank(S) = {rs} exceeds |S| = {}", distinct(s)));
    }

    for x in t {
        let r = rank(&with(s, &[x]))?;
        if r < rs || r > rs + 1 {
            fail(Axiom::UnitIncrease, format!("adding {x:?} moves rank from {rs} to {r}"));
        }
    }

    let union: Vec<_> = s.iter().chain(t).cloned().collect();
    let ru = rank(&union)?;
    if rs > ru || rt > ru {
        fail(Axiom::Monotone, format!("rank(S) = {rs}, rank(T) = {rt}, rank(S ∪ T) = {ru}"));
    }

    let t_set: HashSet<_> = t.iter().collect();
    let inter: Vec<_> = s.iter().filter(|x| t_set.contains(x)).cloned().collect();
    let ri = rank(&inter)?;
    if ru + ri > rs + rt {
        fail(
            Axiom::Submodular,
            format!("rank(S∪T) + rank(S∩T) = {ru} + {ri} > rank(S) + rank(T) = {rs} + {rt}"),
        );
    }

    for a in t {
        for b in t {
            if a == b {
                continue;
            }
            let rsa = rank(&with(s, &[a]))?;
            let rsb = rank(&with(s, &[b]))?;
            let rsab = rank(&with(s, &[a, b]))?;
            if rsa == rs + 1 && rsab == rsb && rsab != rsa {
                fail(
                    Axiom::Exchange,
                    format!("{a:?} ∈ cl(S ∪ {{{b:?}}}) \\ cl(S) but {b:?} ∉ cl(S ∪ {{{a:?}}})"),
                );
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzReport {
    pub trials: usize,
    pub violations: Vec<AxiomViolation>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs [`check_rank_axioms`] on `trials` pairs `(S, T)` drawn by `sample`.
pub fn fuzz_rank_axioms<M: Matroid, R: Rng>(
    matroid: &M,
    rng: &mut R,
    trials: usize,
    mut sample: impl FnMut(&mut R) -> Vec<M::Element>,
) -> Result<FuzzReport, MatroidError> {
    let mut violations = Vec::new();
    for _ in 0..trials {
        let s = sample(rng);
        let t = sample(rng);
        violations.extend(check_rank_axioms(matroid, &s, &t)?);
    }
    Ok(FuzzReport { trials, violations })
}
