use thiserror::Error;

/// Every failure mode of the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QsvError {
    #[error("series is not a unit: {0}")]
    NotAUnit(String),
    #[error("root-of-unity power is ill defined at q-exponent {0}")]
    IllDefinedRootOfUnityPower(String),
    #[error("requested order {order} exceeds available truncation {available}")]
    InsufficientTruncation { order: String, available: String },
    #[error("pole at specialization: {0}")]
    PoleAtSpecialization(String),
    #[error("theta prefactor is not invertible: {0}")]
    NonUnitPrefactor(String),
    #[error("degenerate specialization: {0}")]
    DegenerateSpecialization(String),
    #[error("lattice enumeration did not terminate within radius {0}")]
    NonTerminatingEnumeration(i64),
    #[error("character m-range could not be closed: {0}")]
    MRangeBoundFailure(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("form `{form}` is unavailable for `{name}`")]
    FormUnavailable { name: String, form: String },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("exponent out of machine range: {0}")]
    ExponentOverflow(String),
}

pub type Result<T> = std::result::Result<T, QsvError>;
