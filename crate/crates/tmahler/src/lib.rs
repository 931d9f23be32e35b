//! t-metric Mahler measures of two-prime rationals.
//!
//! This crate computes m_t(α) for rationals of the form α = p^a/q^b (p, q distinct
//! primes) by exploiting the structure of best rational approximations to
//! ξ = log q/log p:
//!
//! * [`numbers`] — exact integer power comparison (`p^a` vs `q^b`), certified log
//!   enclosures, deterministic 64-bit primality.
//! * [`real`] — interval arithmetic with directed rounding, the certainty layer
//!   every comparison rests on.
//! * [`approx`] — certified continued-fraction expansion of ξ and the complete
//!   classification of exponent pairs (upper/lower sets, best approximations,
//!   boundary points, irreducibility).
//! * [`measures`] — Mahler measure / Weil height of rationals, measure functions
//!   of factorizations, and m_t evaluation.
//! * [`infimum`] — characteristic transformation, factorization-vector
//!   enumeration, convex-hull pruning, the piecewise m_t profile and its
//!   exceptional points, and structural audits of the factorization theory.
//! * [`golden`] — Fibonacci golden-pair search for constructing α with many
//!   exceptional points, plus the consecutive-Fibonacci infimum-set experiment.
//! * [`oracle`] — brute-force enumeration of all factorizations, the ground
//!   truth against which every fast path is validated.
//!
//! All set-membership and ordering decisions are exact: they reduce to integer
//! power comparisons or to interval evaluations that are escalated in precision
//! until the sign is certain (or reported as uncertain, never guessed).

pub mod approx;
pub mod error;
pub mod golden;
pub mod infimum;
pub mod measures;
pub mod numbers;
pub mod oracle;
pub mod real;
mod simplex;

pub use approx::{best_approximations, cf_expand, classify, is_first_kind_best, is_irreducible};
pub use approx::{CFExpansion, Classification, ExponentPair, LogRatio};
pub use error::Error;
pub use golden::{
    find_golden_pair, golden_case, golden_char_transform, gr_conjecture_experiment, FibSequence,
    GoldenCaseReport, GoldenPair, GrCase, GrExperiment,
};
pub use infimum::{
    characteristic_transformation, empirical_minimal_set, enumerate_vectors,
    factorization_to_vector, hull_vertices, mt_profile, theorem_main_audit,
    vector_to_factorization, AuditReport, Breakpoint, BreakpointKind, CharTransform,
    EmpiricalMinimalSet, Factorization, FactorizationVector, MtProfile, Segment,
};
pub use measures::{
    eval_measure_function, m_t, mahler_measure, Measure, MeasureFunction, MtMethod, MtOutcome,
    PrimePowerRational, TParam,
};
pub use oracle::{enumerate_factorizations, oracle_m_t, OracleOutcome};
pub use real::{precision_cap, set_precision_cap, CertifiedReal};

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
