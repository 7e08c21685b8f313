use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Requested domain leaves the natural domain of a weight kind.
    #[error("domain error: {0}")]
    Domain(String),

    /// A constructor parameter violates its constraint.
    #[error("parameter error: {0}")]
    Param(String),

    /// A derivative order exceeds what the function can provide.
    #[error("order error: requested order {requested} exceeds available order {available}")]
    Order { requested: usize, available: usize },

    /// An argument falls outside the admissible range.
    #[error("range error: {0}")]
    Range(String),

    /// A (regime, alpha, p, q) combination violates a theorem hypothesis.
    #[error("regime error: {0}")]
    Regime(String),

    /// A boundary-flatness (or derivative-bound) hypothesis fails numerically.
    #[error("hypothesis error: {0}")]
    Hypothesis(String),

    /// A partition index is out of bounds.
    #[error("index error: {0}")]
    Index(String),

    /// Adaptive quadrature hit the panel cap before reaching the tolerance.
    #[error("quadrature did not converge: error estimate {estimate:e} above tolerance {tol:e} after {panels} panels")]
    NonConvergence {
        estimate: f64,
        tol: f64,
        panels: usize,
    },

    /// An integrand or norm target evaluated to NaN.
    #[error("evaluation error: {0}")]
    Eval(String),
}

pub type Result<T> = std::result::Result<T, Error>;
