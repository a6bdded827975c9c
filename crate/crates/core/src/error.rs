use thiserror::Error;

use crate::config::Violation;

/// Error taxonomy shared by the whole crate.
#[derive(Debug, Error)]
pub enum CoreError {
    /// A physical configuration violates hard invariants.
    #[error("invalid configuration: {}", format_violations(.0))]
    Config(Vec<Violation>),

    /// Thresholds or quadrature parameters are malformed.
    #[error("invalid parameters: {0}")]
    Parameters(String),

    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested scenario combination is not supported
    /// (e.g. simultaneous temperature and acceleration).
    #[error("unsupported scenario: {0}")]
    UnsupportedScenario(String),

    /// A quadrature or extrapolation failed to reach the requested accuracy.
    #[error("accuracy error: residual {residual:e} exceeds target {target:e} in {context}")]
    Accuracy {
        context: String,
        residual: f64,
        target: f64,
    },

    /// An internal consistency check failed; this signals a sign or
    /// convention bug rather than a numerical accuracy problem.
    #[error("consistency error: {0}")]
    Consistency(String),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
