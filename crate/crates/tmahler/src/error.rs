use num_bigint::BigUint;

use crate::approx::ExponentPair;

/// Errors reported by the computation engine.
///
/// Uncertainty is never silent: when interval escalation hits the precision cap
/// without resolving a comparison, the failure is surfaced here together with
/// whatever partial result was already certified.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A precondition of the chosen method does not hold for the input.
    #[error("hypothesis not satisfied: {0}")]
    HypothesisNotMet(String),

    /// Continued-fraction expansion could not certify the next quotient.
    /// `quotients` is the fully certified prefix.
    #[error("continued fraction uncertain beyond depth {}: certified prefix has {} quotients", .depth, .quotients.len())]
    CfUncertain { quotients: Vec<BigUint>, depth: usize },

    /// Best-approximation enumeration stopped early; `partial` is certified.
    #[error("best-approximation enumeration incomplete ({detail}); {} pairs certified", .partial.len())]
    PartialBestApproximations {
        partial: Vec<ExponentPair>,
        detail: String,
    },

    /// The brute-force route refuses inputs past its exponent budget.
    #[error("exponent total {requested} exceeds the brute-force bound {bound}; \
             the factorization-vector route handles larger exponents")]
    OracleBoundExceeded { requested: u64, bound: u64 },

    /// Two quantities stayed indistinguishable at the precision cap.
    #[error("ordering uncertain at {precision_bits} bits: {context}")]
    UncertainOrdering { precision_bits: u32, context: String },

    /// A bounded search exhausted its cap without finding a witness.
    #[error("search for {what} exhausted cap {cap}")]
    SearchCapExceeded { cap: u64, what: String },

    /// Two independent computations of the same object disagree. This always
    /// indicates a defect in one of the routes, never a property of the input.
    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    /// Malformed textual input (rationals, t values).
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn hypothesis(msg: impl Into<String>) -> Self {
        Error::HypothesisNotMet(msg.into())
    }
}
