//! End-to-end computation of growth polynomials and the ranks derived from them.

use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::check::check_system;
use crate::matroid::{relative_rank, Matroid};
use crate::multiindex::{box_points, MultiIndex};
use crate::operators::{graded_orbit, OperatorSystem, OrbitCache};

use super::numerator::{numerator_from_table, GeneratingNumerator};
use super::polynomial::{interpolate, word_count, GrowthPolynomial, OrbitMode};
use super::staircase::{detect_stabilization, StaircaseCertificate};
use super::table::{tabulate_context_f, DecreasingTable};
use super::{Certification, GrowthError, StabilizationConfig};

/// One point of the verification window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitPoint {
    pub point: Vec<u32>,
    pub predicted: BigRational,
    pub actual: usize,
}

impl FitPoint {
    pub fn matches(&self) -> bool {
        self.predicted == BigRational::from_integer(BigInt::from(self.actual))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FitReport {
    pub points: Vec<FitPoint>,
}

impl FitReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &FitPoint> {
        self.points.iter().filter(|p| !p.matches())
    }

    pub fn is_exact(&self) -> bool {
        self.mismatches().next().is_none()
    }
}

#[derive(Debug, Clone)]
pub struct GrowthResult {
    pub polynomial: GrowthPolynomial,
    pub numerator: GeneratingNumerator,
    pub staircase: StaircaseCertificate,
    pub table: DecreasingTable,
    /// Final table box after automatic growth.
    pub bound: MultiIndex,
    pub fit: FitReport,
    pub certification: Certification,
    /// Part sizes `d_1, …, d_k` of the system the polynomial lives on.
    pub sizes: Vec<usize>,
}

impl GrowthResult {
    /// `R(1, …, 1)`, the leading coefficient normalized by `Π (d_i − 1)!`.
    pub fn phi_rank(&self) -> BigRational {
        BigRational::from_integer(self.numerator.at_ones())
    }

    pub fn is_certified(&self) -> bool {
        self.certification == Certification::Certified
    }

    /// First point of agreement `‖m̄‖`.
    pub fn threshold(&self) -> &[u32] {
        self.polynomial.threshold()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Hypothesis {
    Triangular,
    QuasiTriangular,
}

impl Hypothesis {
    fn name(self) -> &'static str {
        match self {
            Hypothesis::Triangular => "triangular",
            Hypothesis::QuasiTriangular => "quasi-triangular",
        }
    }
}

/// Rejects systems whose flags do not claim `need`, then looks for a sampled
/// counterexample. `sys` is already augmented when `need` is quasi-triangular.
fn check_hypothesis<M: Matroid>(
    sys: &OperatorSystem<M>,
    sample: &[M::Element],
    cfg: &StabilizationConfig,
    need: Hypothesis,
) -> Result<(), GrowthError> {
    for (p, flag) in sys.flags().iter().enumerate() {
        if !flag.is_triangular() {
            return Err(GrowthError::Precondition(format!(
                "part {} is not declared {}",
                p + 1,
                need.name()
            )));
        }
    }
    let Some(check) = &cfg.check else {
        return Ok(());
    };
    let report = check_system(sys, sample, check);
    if let Some(e) = report.errors.first() {
        return Err(GrowthError::Input(format!(
            "maps could not be evaluated on the sample orbit: {e}"
        )));
    }
    if let Some(c) = report.commutation.first() {
        return Err(GrowthError::Hypothesis(format!(
            "maps {} and {} do not commute at {:?}: {:?} vs {:?}",
            c.maps.0 + 1,
            c.maps.1 + 1,
            c.element,
            c.left,
            c.right
        )));
    }
    for part in &report.parts {
        if let Some(w) = &part.triangular {
            return Err(GrowthError::Hypothesis(format!(
                "part {} failed the {} rank inequality: {w}",
                part.part + 1,
                need.name()
            )));
        }
    }
    Ok(())
}

fn sample<E: Clone>(a: &[E], b: &[E]) -> Vec<E> {
    a.iter().chain(b).cloned().collect()
}

fn with_threads<T: Send>(
    cfg: &StabilizationConfig,
    f: impl FnOnce() -> Result<T, GrowthError> + Send,
) -> Result<T, GrowthError> {
    match cfg.threads {
        None => f(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| GrowthError::Input(format!("thread pool: {e}")))?
            .install(f),
    }
}

/// Tabulates and interpolates, growing the box while the staircase does not fit
/// or the fit fails, up to the cap. Hypotheses are assumed checked.
fn run<M: Matroid>(
    phi: &OperatorSystem<M>,
    psi: &OperatorSystem<M>,
    a: &[M::Element],
    b: &[M::Element],
    cfg: &StabilizationConfig,
) -> Result<GrowthResult, GrowthError> {
    let m = phi.m();
    let mut bound = cfg.initial_bound(m)?;
    let cap = cfg.cap(m);
    let partition = phi.partition();
    let sizes = partition.sizes().to_vec();
    loop {
        let table = tabulate_context_f(phi, psi, a, b, &bound)?;
        if let Some((u, v)) = table.violations().first() {
            return Err(GrowthError::Hypothesis(format!(
                "f increases from {u:?} to {v:?}, so some part is not triangular"
            )));
        }
        let staircase = detect_stabilization(&table, cfg.window)?;
        if !staircase.is_certified() {
            let mut grown = bound.clone().into_vec();
            for i in staircase.short_coordinates(&bound) {
                let want = (staircase.corner.entries()[i] + cfg.window).max(grown[i] + 1);
                grown[i] = want.min(cap.max(grown[i]));
            }
            let grown = MultiIndex::new(grown);
            if grown != bound {
                bound = grown;
                continue;
            }
        }

        let numerator = numerator_from_table(&table, &staircase.corner, partition)?;
        let polynomial = interpolate(&numerator, &sizes);
        check_invariants(&polynomial, &numerator, &sizes)?;

        let lo = polynomial.threshold().to_vec();
        let hi: Vec<u32> = lo.iter().map(|&x| x + cfg.window).collect();
        let fit = verify_context_fit(&polynomial, phi, psi, a, b, &lo, &hi)?;
        if !fit.is_exact() {
            // A drop beyond the box: enlarge every coordinate and retry.
            let grown = MultiIndex::new(
                bound
                    .entries()
                    .iter()
                    .map(|&x| (x + cfg.window.max(x / 2)).min(cap.max(x)))
                    .collect(),
            );
            if grown != bound {
                bound = grown;
                continue;
            }
        }
        let certification = if !fit.is_exact() {
            Certification::VerificationFailed
        } else if staircase.is_certified() {
            Certification::Certified
        } else {
            Certification::BoxTruncated
        };
        return Ok(GrowthResult {
            polynomial,
            numerator,
            staircase,
            table,
            bound,
            fit,
            certification,
            sizes,
        });
    }
}

fn check_invariants(
    polynomial: &GrowthPolynomial,
    numerator: &GeneratingNumerator,
    sizes: &[usize],
) -> Result<(), GrowthError> {
    if !polynomial.respects_degree_bound() {
        return Err(GrowthError::Invariant(format!(
            "polynomial {polynomial} exceeds the degree bound {:?}",
            polynomial.degree_bound()
        )));
    }
    let top: Vec<u32> = sizes.iter().map(|&d| d as u32 - 1).collect();
    let factorials: BigInt = sizes
        .iter()
        .map(|&d| (1..d).map(BigInt::from).product::<BigInt>())
        .product();
    let normalized = polynomial.coefficient(&top) * BigRational::from_integer(factorials);
    if normalized != BigRational::from_integer(numerator.at_ones()) {
        return Err(GrowthError::Invariant(format!(
            "normalized leading coefficient {normalized} differs from R(1..1) = {}",
            numerator.at_ones()
        )));
    }
    Ok(())
}

/// The polynomial `P` with `P(s̄) = rk(Φ^{(s̄)}(A) | Φ^{(s̄)}(B))` for `s̄ ⪰ ‖m̄‖`.
///
/// Every part must be flagged triangular; the flags are also tested on the
/// orbit of `A ∪ B` when `cfg.check` is set.
pub fn dimension_polynomial<M: Matroid>(
    sys: &OperatorSystem<M>,
    a: &[M::Element],
    b: &[M::Element],
    cfg: &StabilizationConfig,
) -> Result<GrowthResult, GrowthError> {
    with_threads(cfg, || {
        check_hypothesis(sys, &sample(a, b), cfg, Hypothesis::Triangular)?;
        run(sys, sys, a, b, cfg)
    })
}

/// The polynomial `Q` with `Q(s̄) = rk(Φ^{(⪯s̄)}(A) | Φ^{(⪯s̄)}(B))` eventually.
///
/// Runs on the system with the identity prepended to each part, which needs
/// every part flagged quasi-triangular.
pub fn cumulative_polynomial<M: Matroid>(
    sys: &OperatorSystem<M>,
    a: &[M::Element],
    b: &[M::Element],
    cfg: &StabilizationConfig,
) -> Result<GrowthResult, GrowthError> {
    let augmented = sys.augment();
    with_threads(cfg, || {
        check_hypothesis(&augmented, &sample(a, b), cfg, Hypothesis::QuasiTriangular)?;
        run(&augmented, &augmented, a, b, cfg)
    })
}

/// `s̄ ↦ rk(Φ^{(s̄)}(A) | Ψ^{(s̄)}(B))` for a subsystem `Φ` of `Ψ`.
///
/// `selection[p]` lists the indices of `psi`'s part `p` kept in `Φ`.
pub fn context_dimension_polynomial<M: Matroid>(
    psi: &OperatorSystem<M>,
    selection: &[Vec<usize>],
    a: &[M::Element],
    b: &[M::Element],
    cfg: &StabilizationConfig,
) -> Result<GrowthResult, GrowthError> {
    let phi = psi
        .subsystem(selection)
        .map_err(|e| GrowthError::Input(e.to_string()))?;
    with_threads(cfg, || {
        let s = sample(a, b);
        check_hypothesis(psi, &s, cfg, Hypothesis::Triangular)?;
        check_hypothesis(&phi, &s, cfg, Hypothesis::Triangular)?;
        run(&phi, psi, a, b, cfg)
    })
}

/// Compares `p` with direct rank evaluation on every `s̄` with `lo ⪯ s̄ ⪯ hi`.
pub fn verify_fit<M: Matroid>(
    p: &GrowthPolynomial,
    sys: &OperatorSystem<M>,
    a: &[M::Element],
    b: &[M::Element],
    lo: &[u32],
    hi: &[u32],
) -> Result<FitReport, GrowthError> {
    verify_context_fit(p, sys, sys, a, b, lo, hi)
}

pub fn verify_context_fit<M: Matroid>(
    p: &GrowthPolynomial,
    phi: &OperatorSystem<M>,
    psi: &OperatorSystem<M>,
    a: &[M::Element],
    b: &[M::Element],
    lo: &[u32],
    hi: &[u32],
) -> Result<FitReport, GrowthError> {
    let k = phi.k();
    if lo.len() != k || hi.len() != k || p.k() != k {
        return Err(GrowthError::Input(format!(
            "window {lo:?}..{hi:?} and polynomial in {} variables do not match {k} parts",
            p.k()
        )));
    }
    if lo.iter().zip(p.threshold()).any(|(l, t)| l < t) {
        return Err(GrowthError::Precondition(format!(
            "window start {lo:?} lies below the threshold {:?}",
            p.threshold()
        )));
    }
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return Err(GrowthError::Input(format!("empty window {lo:?}..{hi:?}")));
    }
    let cache = OrbitCache::new();
    let base_cache = OrbitCache::new();
    let span: Vec<u32> = lo.iter().zip(hi).map(|(l, h)| h - l).collect();
    let mut points = Vec::new();
    for offset in box_points(&span) {
        let s: Vec<u32> = offset.entries().iter().zip(lo).map(|(o, l)| o + l).collect();
        let image = graded_orbit(phi, a, &s, &cache)?;
        let context = graded_orbit(psi, b, &s, &base_cache)?;
        let actual = relative_rank(phi.matroid().as_ref(), &image, &context)?;
        points.push(FitPoint {
            predicted: p.eval_u32(&s),
            point: s,
            actual,
        });
    }
    Ok(FitReport { points })
}

/// Φ-rank of `A` over `B`, i.e. `R(1, …, 1)` of the graded numerator.
#[derive(Debug, Clone)]
pub struct RankOutcome {
    pub value: BigRational,
    pub certification: Certification,
    pub result: GrowthResult,
}

pub fn phi_rank<M: Matroid>(
    sys: &OperatorSystem<M>,
    a: &[M::Element],
    b: &[M::Element],
    cfg: &StabilizationConfig,
) -> Result<RankOutcome, GrowthError> {
    let result = dimension_polynomial(sys, a, b, cfg)?;
    Ok(RankOutcome {
        value: result.phi_rank(),
        certification: result.certification,
        result,
    })
}

/// Φ*-rank of `A` over `B`, from the cumulative polynomial.
pub fn phi_star_rank<M: Matroid>(
    sys: &OperatorSystem<M>,
    a: &[M::Element],
    b: &[M::Element],
    cfg: &StabilizationConfig,
) -> Result<RankOutcome, GrowthError> {
    let result = cumulative_polynomial(sys, a, b, cfg)?;
    let value = result.phi_rank();
    if !value.is_integer() || value.is_negative() {
        return Err(GrowthError::Invariant(format!(
            "cumulative rank {value} is not a natural number"
        )));
    }
    let top: Vec<u32> = result.sizes.iter().map(|&d| d as u32 - 1).collect();
    let factorials: BigInt = sys
        .partition()
        .sizes()
        .iter()
        .map(|&d| (1..=d).map(BigInt::from).product::<BigInt>())
        .product();
    let scaled = result.polynomial.coefficient(&top) * BigRational::from_integer(factorials);
    if !scaled.is_integer() || scaled.is_negative() {
        return Err(GrowthError::Invariant(format!(
            "scaled cumulative leading coefficient {scaled} is not a natural number"
        )));
    }
    Ok(RankOutcome {
        value,
        certification: result.certification,
        result,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureAnswer {
    /// `witness` is a part degree with `rk(Φ^{(s̄)}(a) | Φ^{(s̄)}(B)) < |Φ^{(s̄)}|`,
    /// absent when membership was read off a certified zero rank.
    Member { witness: Option<Vec<u32>> },
    NotMember,
    Inconclusive,
}

/// Decides `a ∈ cl^Φ(B)`.
///
/// Searches the default box for a rank deficit first. Without one, a
/// certified Φ-rank of `{a}` over `B` settles the question when every part is
/// triangular.
pub fn phi_closure_member<M: Matroid>(
    sys: &OperatorSystem<M>,
    a: &M::Element,
    b: &[M::Element],
    cfg: &StabilizationConfig,
) -> Result<ClosureAnswer, GrowthError> {
    let p = sys.partition();
    let bound = cfg.initial_bound(sys.m())?;
    let search: Vec<u32> = (0..p.k())
        .map(|i| bound.entries()[p.range(i)].iter().copied().max().unwrap_or(0))
        .collect();
    let seed = std::slice::from_ref(a);
    let cache = OrbitCache::new();
    let base_cache = OrbitCache::new();
    for s in box_points(&search) {
        let image = graded_orbit(sys, seed, s.entries(), &cache)?;
        let context = graded_orbit(sys, b, s.entries(), &base_cache)?;
        let rank = relative_rank(sys.matroid().as_ref(), &image, &context)?;
        if BigUint::from(rank) < word_count(p, s.entries(), OrbitMode::Graded) {
            return Ok(ClosureAnswer::Member {
                witness: Some(s.into_vec()),
            });
        }
    }
    if !sys.flags().iter().all(|f| f.is_triangular()) {
        return Ok(ClosureAnswer::Inconclusive);
    }
    let outcome = match phi_rank(sys, seed, b, cfg) {
        Ok(o) => o,
        Err(GrowthError::Hypothesis(_)) => return Ok(ClosureAnswer::Inconclusive),
        Err(e) => return Err(e),
    };
    if outcome.certification != Certification::Certified {
        return Ok(ClosureAnswer::Inconclusive);
    }
    Ok(if outcome.value.is_zero() {
        ClosureAnswer::Member { witness: None }
    } else if outcome.value.is_one() {
        ClosureAnswer::NotMember
    } else {
        ClosureAnswer::Inconclusive
    })
}
