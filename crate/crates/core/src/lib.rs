//! Eventual growth polynomials of matroid ranks under commuting operator systems.
//!
//! The crate computes, for a finitary matroid given by a rank oracle and a
//! partitioned tuple of commuting self-maps `Φ`, the polynomial that
//! eventually agrees with `s̄ ↦ rk(Φ^{(s̄)}(A) | Φ^{(s̄)}(B))`, together with its
//! cumulative variant, the associated closure ranks, and a certificate that
//! the polynomial matches direct rank evaluation on a window.
//!
//! Layout:
//! - [`matroid`]: rank oracles, relative rank, localization.
//! - [`multiindex`], [`operators`], [`check`]: words, orbits, and sampled
//!   verification of the triangularity hypotheses.
//! - [`engine`]: tabulation of the decreasing function, staircase detection,
//!   generating-function numerators, interpolation, and certification.
//! - [`backends`]: trivial, ideal-count, linear, graphic, chain and circuit matroids.
//! - [`synth`]: random decreasing functions for exercising the engine.

pub mod axioms;
pub mod backends;
pub mod check;
pub mod engine;
pub mod matroid;
pub mod multiindex;
pub mod operators;
pub mod sparse;
pub mod synth;

pub use check::{check_system, CheckConfig, SystemReport};
pub use engine::{
    cumulative_polynomial, detect_stabilization, dimension_polynomial, dominant_terms, eval_f,
    interpolate, numerator_from_table, phi_closure_member, phi_rank, phi_star_rank,
    realize_monomial_module, tabulate_f, verify_fit, word_count, Certification, ClosureAnswer,
    DecreasingTable, GeneratingNumerator, GrowthError, GrowthPolynomial, GrowthResult,
    OrbitMode, StabilizationConfig, StaircaseCertificate,
};
pub use matroid::{
    extend_basis, in_closure, localize, relative_rank, Element, Independence, Matroid,
    MatroidError,
};
pub use multiindex::{lex_compare, IndexError, MultiIndex, Partition};
pub use operators::{
    apply_word, cumulative_orbit, graded_orbit, MapError, Operator, OperatorSystem,
    OrbitCache, OrbitError, PartFlag, SystemError,
};
