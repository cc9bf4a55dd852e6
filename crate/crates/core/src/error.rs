use thiserror::Error;

/// Errors raised by the geometry engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("origin is not strictly interior to the polygon")]
    OriginNotInterior,
    #[error("affine map is singular (|det| = {0:e})")]
    SingularMap(f64),
    #[error("no positive-area affine image fits: {0}")]
    Infeasible(String),
    #[error("optimizer did not converge: {0}")]
    NonConverged(String),
    #[error("bodies have no boundary contacts")]
    NoContacts,
    #[error("no John certificate found (best residual {0:e})")]
    NoCertificate(f64),
    #[error("contact pairs admit no positive weights (residual {0:e})")]
    InfeasibleWeights(f64),
    #[error("expected {expected} contact pairs, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("certificate fails verification (worst residual {0:e})")]
    CertificateInvalid(f64),
    #[error("point is not on both boundaries (defect {0:e})")]
    NotAContactPoint(f64),
    #[error("inclusion chain violated at {0}")]
    ChainViolated(String),
    #[error("epsilon {0} too large: perturbed body leaves the outer homothet")]
    EpsilonTooLarge(f64),
    #[error("map conditions inconsistent (residual {0:e})")]
    InconsistentConditions(f64),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("polygon has no center of symmetry")]
    NotSymmetric,
    #[error("unknown scenario id `{0}`")]
    UnknownScenario(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
