use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("primes belong to different spectra")]
    MixedSpectrum,
    #[error("subset is not describable: {0}")]
    NotDescribable(String),
    #[error("empty subset has no bound")]
    EmptySubset,
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("unknown prime `{0}`")]
    UnknownPrime(String),
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
    #[error("submodule {inner} is not contained in {outer}")]
    NotContained { inner: String, outer: String },
    #[error("symbolic positions cannot be compared: {0}")]
    IncomparableSymbolic(String),
    #[error("prime {0} is not idempotent")]
    NotIdempotent(String),
    #[error("oracle does not describe a cosilting class: {0}")]
    InvalidOracle(String),
    #[error("filtration is not nowhere dense: {0}")]
    NotNowhereDense(String),
    #[error("enumeration budget of {budget} candidates exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("non-density formulations disagree: {0}")]
    FormulationMismatch(String),
    #[error("operation unsupported on this input: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
