//! Tagged computation results: every value carries how it was obtained.

use crate::airy::AiryPolynomial;
use crate::bigreal::BigReal;
use crate::exact::Rational;
use crate::mc::McEstimate;
use std::fmt;

/// A computed moment with its provenance. Exact values stay exact; numeric
/// values carry their digit request; Monte Carlo values carry their error.
#[derive(Debug, Clone)]
pub enum MomentResult {
    Exact(Rational),
    ExactPolynomial(AiryPolynomial),
    Numeric { value: BigReal, digits: u32 },
    MonteCarlo(McEstimate),
}

impl MomentResult {
    /// Canonical value string: rationals as `p/q`, never silently floated.
    pub fn value_string(&self) -> String {
        match self {
            MomentResult::Exact(r) => r.to_string(),
            MomentResult::ExactPolynomial(p) => p.to_string(),
            MomentResult::Numeric { value, digits } => {
                value.to_decimal_string(*digits as usize)
            }
            MomentResult::MonteCarlo(est) => format!("{:.12e}", est.mean),
        }
    }

    pub fn provenance_string(&self) -> String {
        match self {
            MomentResult::Exact(_) => "exact".into(),
            MomentResult::ExactPolynomial(_) => "exact-polynomial".into(),
            MomentResult::Numeric { digits, .. } => {
                format!("numeric(digits={digits},bound=1e-{digits})")
            }
            MomentResult::MonteCarlo(est) => {
                format!("mc(samples={},stderr={:.6e})", est.samples, est.stderr)
            }
        }
    }
}

impl fmt::Display for MomentResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.value_string(), self.provenance_string())
    }
}
