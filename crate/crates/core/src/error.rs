use thiserror::Error;

/// Every failure the library reports.
///
/// The variants are coarse on purpose: the CLI maps them onto exit codes,
/// and tests match on the variant rather than on message text.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A precondition on the inputs was violated (indices, ranges, shapes).
    #[error("domain error: {0}")]
    Domain(String),

    /// A Gamma argument sits on (or within 1e-9 of) a pole.
    #[error("pole: Gamma({arg}) is singular ({context})")]
    Pole { arg: f64, context: String },

    /// An existence criterion failed, so the integral is infinite.
    #[error("divergent integral: {0}")]
    Divergence(String),

    /// The integrand is not integrable near the origin.
    #[error("not locally integrable near 0: {0}")]
    LocalIntegrability(String),

    /// Adaptive quadrature ran out of subdivisions.
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    /// Not enough derivatives are available for the requested operator.
    #[error("insufficient smoothness: {0}")]
    Smoothness(String),

    /// Numerical differentiation noise exceeded its budget.
    #[error("unstable differentiation: {0}")]
    Instability(String),

    /// A profile was handed to an operator expecting another variable.
    #[error("argument kind mismatch: expected {expected}, found {found}")]
    ArgKind { expected: String, found: String },

    /// A coordinate lies outside the canonical range of its model.
    #[error("out of range: {0}")]
    Range(String),

    /// Re-applying the forward operator did not reproduce the data.
    #[error("input is not in the range of the forward operator: {0}")]
    NotInRange(String),

    /// Monte Carlo estimate failed its convergence diagnostics.
    #[error("Monte Carlo did not converge: {0}")]
    MonteCarlo(String),

    /// The smoothing fit could not absorb the Monte Carlo noise.
    #[error("smoothing fit failed: {0}")]
    Smoothing(String),

    /// Job file problems and I/O (CLI only).
    #[error("job error: {0}")]
    Job(String),
}

pub type Result<T> = std::result::Result<T, Error>;
