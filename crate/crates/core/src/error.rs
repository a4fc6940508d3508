//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum EdsError {
    #[error("charts differ: `{left}` vs `{right}`")]
    ChartMismatch { left: String, right: String },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("interior product needs degree >= 1")]
    InteriorOfScalar,
    #[error("Hodge dual of a 2-form needs n >= 3, got n = {0}")]
    DualDimension(usize),
    #[error("basis budget exceeded: C({n},{k}) = {needed} > {limit}; raise the budget to force")]
    BudgetExceeded {
        n: usize,
        k: usize,
        needed: u128,
        limit: u128,
    },
    #[error("prime {p} divides a denominator in the matrix")]
    BadPrime { p: u64 },
    #[error("rational and modular ranks agree on only {agree} of {total} primes")]
    ModularDisagreement { agree: usize, total: usize },
    #[error("independence condition fails at step {step}: pinned polar system is infeasible (genus < n)")]
    GenusDeficit { step: usize },
    #[error("persistent degeneracy: {0}")]
    Degenerate(String),
    #[error("trial with seed {seed} failed: {source}")]
    TrialFailed {
        seed: u64,
        #[source]
        source: Box<EdsError>,
    },
}
