use thiserror::Error;

/// Errors surfaced by the library. Pole conditions carry enough context to
/// locate the vanishing factor; sampling and truncation failures carry their
/// budgets.
#[derive(Debug, Error)]
pub enum Error {
    #[error("mixed scalar backends in {0}")]
    MixedBackend(&'static str),

    #[error("pochhammer pole: factor 1 - q^{m} x vanishes")]
    PochhammerPole { m: i64 },

    #[error("weight pole: {0}")]
    WeightPole(String),

    #[error("cross matrix singular: {0}")]
    CrossMatrixSingular(String),

    #[error("fused weight pole: {0}")]
    FusedWeightPole(String),

    #[error("q-Hahn weight pole: {0}")]
    QHahnWeightPole(String),

    #[error("symmetrization pole: {0}")]
    SymmetrizationPole(String),

    #[error("genericity sampling failed after {attempts} attempts")]
    GenericitySamplingFailed { attempts: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("truncation failure: {0}")]
    TruncationFailure(String),

    #[error("quadrature non-convergence: last delta {last_delta:e} after {nodes} nodes")]
    QuadratureNonConvergence { last_delta: f64, nodes: usize },

    #[error("contour condition violated: {0}")]
    ContourCondition(String),

    #[error("unknown identity id: {0}")]
    UnknownIdentity(String),

    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),

    #[error("invalid input: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
