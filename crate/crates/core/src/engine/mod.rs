//! Growth polynomials from decreasing functions on `ℕ^m`.

mod module;
mod numerator;
mod pipeline;
mod polynomial;
mod staircase;
mod table;

use thiserror::Error;

use crate::check::CheckConfig;
use crate::matroid::MatroidError;
use crate::multiindex::{IndexError, MultiIndex};
use crate::operators::OrbitError;

pub use module::{realize_monomial_module, LevelCount, LevelIdeal, MonomialModule};
pub use numerator::{numerator_from_table, GeneratingNumerator};
pub use pipeline::{
    context_dimension_polynomial, cumulative_polynomial, dimension_polynomial,
    phi_closure_member, phi_rank, phi_star_rank, verify_context_fit, verify_fit, ClosureAnswer,
    FitPoint, FitReport, GrowthResult, RankOutcome,
};
pub use polynomial::{dominant_terms, interpolate, word_count, GrowthPolynomial, OrbitMode};
pub use staircase::{detect_stabilization, StaircaseCertificate, StaircaseStatus};
pub use table::{eval_context_f, eval_f, tabulate_context_f, tabulate_f, DecreasingTable};

#[derive(Debug, Error)]
pub enum GrowthError {
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Index(#[from] IndexError),
    /// A sampled or tabulated counterexample to commutation or triangularity.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("precondition not met: {0}")]
    Precondition(String),
    /// An internal consistency check failed.
    #[error("invariant broken: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certification {
    /// The staircase fits in the box with its window and the polynomial
    /// matches direct evaluation on the window.
    Certified,
    /// The box cap was reached before the staircase fit.
    BoxTruncated,
    /// Direct evaluation disagrees with the polynomial somewhere on the window.
    VerificationFailed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilizationConfig {
    /// Initial table box per coordinate; `None` uses [`Self::default_bound`].
    pub bound: Option<Vec<u32>>,
    pub window: u32,
    /// Largest per-coordinate box automatic growth may reach.
    pub max_bound: Option<u32>,
    pub threads: Option<usize>,
    /// Sampled hypothesis check run before tabulating; `None` skips it.
    pub check: Option<CheckConfig>,
}

impl Default for StabilizationConfig {
    fn default() -> Self {
        StabilizationConfig {
            bound: None,
            window: 2,
            max_bound: None,
            threads: None,
            check: Some(CheckConfig::default()),
        }
    }
}

impl StabilizationConfig {
    pub fn default_bound(m: usize) -> u32 {
        match m {
            0..=3 => 8,
            4..=5 => 5,
            _ => 4,
        }
    }

    pub fn default_cap(m: usize) -> u32 {
        if m <= 5 {
            16
        } else {
            8
        }
    }

    pub fn initial_bound(&self, m: usize) -> Result<MultiIndex, GrowthError> {
        match &self.bound {
            None => Ok(MultiIndex::new(vec![Self::default_bound(m); m])),
            Some(b) if b.len() == m => Ok(MultiIndex::new(b.clone())),
            Some(b) => Err(GrowthError::Input(format!(
                "box {b:?} has {} coordinates, the system has {m} maps",
                b.len()
            ))),
        }
    }

    pub fn cap(&self, m: usize) -> u32 {
        self.max_bound.unwrap_or_else(|| Self::default_cap(m))
    }
}
