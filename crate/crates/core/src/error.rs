use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("incompatible overlap: {0}")]
    IncompatibleOverlap(String),

    #[error("graph carries omega tails, which this operation does not accept: {0}")]
    TailedGraph(String),

    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("homomorphism is not injective: {0}")]
    NotInjective(String),

    #[error("not a path of the graph: {0}")]
    NotAPath(String),

    #[error("elements live over different graphs")]
    GraphMismatch,

    #[error("elements live over different fields")]
    FieldMismatch,

    #[error("vertex set is not a subset of the graph's vertices: {0}")]
    NotASubset(String),

    #[error("vertex set is not hereditary (prodigal vertex {0})")]
    NotHereditary(String),

    #[error("vertex set is not saturated (desaturating vertex {0})")]
    NotSaturated(String),

    #[error("morphism is not in the admissible category: {0}")]
    NotAdmissibleCategory(String),

    #[error("precondition {flag} refused: {detail}")]
    Precondition { flag: String, detail: String },

    #[error("sanity check failed: {0}")]
    SanityCheck(String),

    #[error("descent identity failed on generator {0}")]
    Descent(String),

    #[error("scalar {0} is not defined in the field")]
    BadScalar(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
