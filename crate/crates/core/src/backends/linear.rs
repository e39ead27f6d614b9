//! Linear matroids over ℚ: vectors in a free module with a monomial basis.
//!
//! Basis keys are `[generator, e_1, …, e_n]`, the monomial `x^ē` times the
//! `generator`-th free generator. A monomial module `⊕ K[x̄]·g / (monomials)`
//! is represented by listing, per generator, the monomials that vanish; every
//! multiple of a vanishing monomial vanishes too, so the surviving keys form
//! a basis and ranks are plain elimination ranks.

use std::sync::Arc;

use num::rational::BigRational;
use num::BigInt;

use crate::matroid::{Element, Independence, Matroid, MatroidError};
use crate::multiindex::{MultiIndex, Partition};
use crate::operators::{MapError, Operator, OperatorSystem, PartFlag};
use crate::sparse::{Echelon, SparseVec};

use super::BackendError;

pub type BasisKey = Vec<u32>;

/// A vector with finitely many nonzero rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LinVec(pub SparseVec<BasisKey>);

impl LinVec {
    /// The vector with integer coordinates `xs` in the standard basis of `ℚ^n`.
    pub fn from_ints(xs: &[i64]) -> Self {
        LinVec(SparseVec::from_terms(xs.iter().enumerate().map(|(i, &x)| {
            (vec![i as u32], BigRational::from_integer(BigInt::from(x)))
        })))
    }

    /// `x^exps · g_generator`.
    pub fn monomial(generator: u32, exps: &[u32]) -> Self {
        let mut key = Vec::with_capacity(exps.len() + 1);
        key.push(generator);
        key.extend_from_slice(exps);
        LinVec(SparseVec::unit(key))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BasisKey, BigRational)>) -> Self {
        LinVec(SparseVec::from_terms(terms))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &LinVec) -> LinVec {
        let mut out = self.0.clone();
        for (k, c) in other.0.iter() {
            out.add_term(k.clone(), c.clone());
        }
        LinVec(out)
    }

    pub fn scale(&self, c: &BigRational) -> LinVec {
        LinVec(SparseVec::from_terms(
            self.0.iter().map(|(k, x)| (k.clone(), x * c)),
        ))
    }
}

impl Element for LinVec {
    fn canonical_key(&self) -> Vec<u8> {
        let mut out = vec![b'l'];
        for (k, c) in self.0.iter() {
            for e in k {
                out.extend_from_slice(&e.to_be_bytes());
            }
            out.push(b':');
            out.extend_from_slice(c.numer().to_string().as_bytes());
            out.push(b'/');
            out.extend_from_slice(c.denom().to_string().as_bytes());
            out.push(b';');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Module {
    vars: usize,
    generators: u32,
    /// Per generator, monomials whose multiples vanish.
    relations: Vec<Vec<MultiIndex>>,
}

impl Module {
    fn vanishes(&self, key: &[u32]) -> bool {
        let Some(rels) = self.relations.get(key[0] as usize) else {
            return false;
        };
        let mono = MultiIndex::from(&key[1..]);
        rels.iter().any(|r| r.precedes(&mono))
    }

    fn check_key(&self, key: &[u32]) -> Result<(), String> {
        if key.len() != self.vars + 1 {
            return Err(format!(
                "basis key {key:?} should have {} entries (generator plus {} exponents)",
                self.vars + 1,
                self.vars
            ));
        }
        if key[0] >= self.generators {
            return Err(format!("generator {} out of range 0..{}", key[0], self.generators));
        }
        if self.vanishes(key) {
            return Err(format!("basis key {key:?} vanishes in the module"));
        }
        Ok(())
    }
}

/// The linear matroid of a monomial module (or of `ℚ^n`, with no variables).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMatroid {
    module: Arc<Module>,
}

impl LinearMatroid {
    /// `ℚ^n` with its standard basis; keys are `[i]`.
    pub fn vector_space(n: usize) -> Self {
        LinearMatroid {
            module: Arc::new(Module {
                vars: 0,
                generators: n as u32,
                relations: vec![Vec::new(); n],
            }),
        }
    }

    /// `K[x_1, …, x_vars]` as a module over itself.
    pub fn polynomial_ring(vars: usize) -> Self {
        Self::monomial_module(vars, 1, &[]).expect("no relations to validate")
    }

    /// `⊕_g K[x̄]·g` modulo the given `(generator, monomial)` relations.
    pub fn monomial_module(
        vars: usize,
        generators: u32,
        relations: &[(u32, Vec<u32>)],
    ) -> Result<Self, BackendError> {
        let mut rels = vec![Vec::new(); generators as usize];
        for (g, mono) in relations {
            if *g >= generators {
                return Err(BackendError::Input(format!(
                    "relation on generator {g}, but there are only {generators}"
                )));
            }
            if mono.len() != vars {
                return Err(BackendError::Input(format!(
                    "relation monomial {mono:?} should have {vars} exponents"
                )));
            }
            rels[*g as usize].push(MultiIndex::from(mono.as_slice()));
        }
        Ok(LinearMatroid {
            module: Arc::new(Module {
                vars,
                generators,
                relations: rels,
            }),
        })
    }

    pub fn vars(&self) -> usize {
        self.module.vars
    }

    pub fn generators(&self) -> u32 {
        self.module.generators
    }

    /// Whether the basis key survives in the quotient.
    pub fn is_live(&self, key: &[u32]) -> bool {
        self.module.check_key(key).is_ok()
    }
}

#[derive(Debug, Clone)]
pub struct LinearBasis {
    module: Arc<Module>,
    echelon: Echelon<BasisKey>,
}

impl Independence<LinVec> for LinearBasis {
    fn insert(&mut self, x: &LinVec) -> Result<bool, MatroidError> {
        for k in x.0.keys() {
            self.module
                .check_key(k)
                .map_err(|reason| MatroidError::foreign(x, reason))?;
        }
        Ok(self.echelon.insert(&x.0))
    }

    fn rank(&self) -> usize {
        self.echelon.rank()
    }
}

impl Matroid for LinearMatroid {
    type Element = LinVec;
    type Basis = LinearBasis;

    fn empty_basis(&self) -> LinearBasis {
        LinearBasis {
            module: self.module.clone(),
            echelon: Echelon::new(),
        }
    }
}

/// A basis-key map extended linearly; keys sent to `None` vanish.
pub fn key_map(
    name: impl Into<String>,
    f: impl Fn(&BasisKey) -> Option<BasisKey> + Send + Sync + 'static,
) -> Operator<LinVec> {
    Operator::new(name, move |v: &LinVec| Ok(LinVec(v.0.map_keys(&f))))
}

/// Multiplication by `x_{var}` (0-based) in the module of `matroid`.
pub fn multiply_by(matroid: &LinearMatroid, var: usize) -> Result<Operator<LinVec>, BackendError> {
    let module = matroid.module.clone();
    if var >= module.vars {
        return Err(BackendError::Input(format!(
            "variable index {var} out of range for {} variables",
            module.vars
        )));
    }
    Ok(Operator::new(format!("x{}", var + 1), move |v: &LinVec| {
        let mut out = SparseVec::new();
        for (k, c) in v.0.iter() {
            if let Err(reason) = module.check_key(k) {
                return Err(MapError::Undefined(reason));
            }
            let mut key = k.clone();
            key[var + 1] += 1;
            if !module.vanishes(&key) {
                out.add_term(key, c.clone());
            }
        }
        Ok(LinVec(out))
    }))
}

/// Multiplication by each variable, grouped by `partition`, with the
/// generators as seed set.
pub fn make_monomial_module_system(
    vars: usize,
    partition: Partition,
    generators: u32,
    relations: &[(u32, Vec<u32>)],
) -> Result<(OperatorSystem<LinearMatroid>, Vec<LinVec>), BackendError> {
    if partition.m() != vars {
        return Err(BackendError::Input(format!(
            "partition covers {} maps but the ring has {vars} variables",
            partition.m()
        )));
    }
    let matroid = LinearMatroid::monomial_module(vars, generators, relations)?;
    let maps = (0..vars)
        .map(|i| multiply_by(&matroid, i))
        .collect::<Result<Vec<_>, _>>()?;
    let seeds = (0..generators)
        .map(|g| LinVec::monomial(g, &vec![0; vars]))
        .filter(|v| v.0.keys().all(|k| matroid.is_live(k)))
        .collect();
    let sys = OperatorSystem::uniform(Arc::new(matroid), maps, partition, PartFlag::Triangular)?;
    Ok((sys, seeds))
}
