//! Error type shared across the library.

/// Library-wide error enum. Numeric routines never panic on bad input; they
/// return one of these variants instead.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Assembly hit a non-finite weight or potential at a grid node.
    #[error("assembly error at node {node} (r = {r:.6e}): {reason}")]
    Assembly { node: usize, r: f64, reason: String },

    /// Eigenvalue bisection exhausted its iteration budget.
    #[error("bisection did not converge after {iterations} iterations; bracket [{lo:.6e}, {hi:.6e}]")]
    Bisection { iterations: usize, lo: f64, hi: f64 },

    /// The dense oracle refuses large problems by design.
    #[error("dense oracle guard: {size} nodes exceeds the {limit}-node limit; use the bisection solver")]
    OracleGuard { size: usize, limit: usize },

    /// A model is malformed or an operation was asked of a model kind that
    /// cannot support it.
    #[error("model error: {0}")]
    Model(String),

    /// A quantity failed its mesh-convergence check; the value is reported
    /// alongside so callers can decide how to proceed.
    #[error("not mesh-converged: {0}")]
    NotConverged(String),

    /// An internal cross-check failed (two routes to the same number
    /// disagreed). Always a bug, never a user error.
    #[error("internal consistency check failed: {0}")]
    Internal(String),

    /// File input/output, tagged with the path involved.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
