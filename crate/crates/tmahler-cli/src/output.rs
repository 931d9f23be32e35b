//! Machine-readable output documents.
//!
//! Every invocation prints one JSON document of a fixed shape: schema
//! version, command name, an echo of the parsed inputs, a command-specific
//! result (or a structured error), and a certification block. Real numbers
//! never appear as bare floats in a result: each carries a decimal rendering
//! at [`DISPLAY_DIGITS`] significant digits plus either an exactness marker
//! or the width of its certified enclosure, so a consumer can always tell a
//! proved value from a displayed one.

use serde_json::{json, Value};
use tmahler::{CertifiedReal, Error};

/// Bumped on any change to the payload shape.
pub const SCHEMA_VERSION: &str = "1";

/// Significant digits for every displayed real.
pub const DISPLAY_DIGITS: usize = 15;

/// Accumulates certification facts while a result payload is assembled.
pub struct Cert {
    exact: bool,
    bits: u32,
    flags: Vec<String>,
}

impl Cert {
    pub fn new() -> Cert {
        Cert { exact: true, bits: 0, flags: Vec::new() }
    }

    /// Converts one certified real to JSON and folds its precision and
    /// exactness into the summary.
    pub fn real(&mut self, x: &CertifiedReal) -> Value {
        self.bits = self.bits.max(x.precision_bits());
        if x.is_exact() {
            json!({ "dec": x.decimal(DISPLAY_DIGITS), "exact": true })
        } else {
            self.exact = false;
            json!({
                "dec": x.decimal(DISPLAY_DIGITS),
                "exact": false,
                "width": x.width_decimal(),
            })
        }
    }

    /// Records a precision rung that was consumed without emitting a value.
    pub fn note_bits(&mut self, bits: u32) {
        self.bits = self.bits.max(bits);
    }

    /// Folds a real into the summary without rendering it; used when the
    /// value reaches the output through another channel (CSV cells).
    pub fn observe(&mut self, x: &CertifiedReal) {
        self.bits = self.bits.max(x.precision_bits());
        if !x.is_exact() {
            self.exact = false;
        }
    }

    pub fn flag(&mut self, msg: impl Into<String>) {
        self.flags.push(msg.into());
    }

    pub fn uncertain(&self) -> bool {
        !self.flags.is_empty()
    }

    pub fn flags(&self) -> &[String] {
        &self.flags
    }

    fn block(&self) -> Value {
        json!({
            "exact": self.exact && self.flags.is_empty(),
            "enclosure_bits": self.bits,
            "uncertain_flags": self.flags,
        })
    }
}

pub fn document(command: &str, inputs: &Value, result: Value, cert: &Cert) -> String {
    render(json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "result": result,
        "certification": cert.block(),
    }))
}

/// Failure document naming the violated precondition.
pub fn error_document(command: &str, inputs: &Value, err: &Error) -> String {
    render(json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "error": error_payload(err),
    }))
}

pub fn error_payload(err: &Error) -> Value {
    let kind = match err {
        Error::Domain(_) => "domain",
        Error::HypothesisNotMet(_) => "hypothesis-not-met",
        Error::CfUncertain { .. } => "cf-uncertain",
        Error::PartialBestApproximations { .. } => "partial-best-approximations",
        Error::OracleBoundExceeded { .. } => "oracle-bound-exceeded",
        Error::UncertainOrdering { .. } => "uncertain-ordering",
        Error::SearchCapExceeded { .. } => "search-cap-exceeded",
        Error::CrossCheck(_) => "cross-check",
        Error::Parse(_) => "parse",
    };
    json!({ "kind": kind, "message": err.to_string() })
}

/// Whether a failure reports honest uncertainty rather than misuse; the two
/// get different exit codes.
pub fn is_uncertainty(err: &Error) -> bool {
    matches!(
        err,
        Error::CfUncertain { .. } | Error::UncertainOrdering { .. }
    )
}

fn render(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("document serialization")
}
