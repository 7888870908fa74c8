use thiserror::Error;

pub type Result<V> = std::result::Result<V, Error>;

/// Every failure the library reports.
///
/// All variants describe a violated domain invariant or precondition;
/// I/O and parsing failures belong to the front-ends.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no observations supplied")]
    EmptyInput,
    #[error("at least two sources required, found {found}")]
    SingleSource { found: usize },
    #[error("source {source_label} has no observations")]
    EmptySource { source_label: String },
    #[error("duplicate source label {0}")]
    DuplicateSource(String),
    #[error("non-finite value {value} in source {source_label}")]
    NonFiniteValue { source_label: String, value: f64 },
    #[error("decision rule needs a nonempty sample")]
    EmptySample,
    #[error("invalid proportions: {0}")]
    InvalidProportions(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("moment components incomplete: missing {0}")]
    IncompleteComponents(String),
    #[error("covariance {cov} violates Cauchy-Schwarz for variances {var1} and {var2}")]
    InvalidCovariance { cov: f64, var1: f64, var2: f64 },
    #[error("need at least {needed} observations, got {got}")]
    TooFewObservations { needed: usize, got: usize },
    #[error("invalid moments: need 0 < C < sigma2, got sigma2 = {sigma2}, C = {c}")]
    InvalidMoments { sigma2: f64, c: f64 },
    #[error("bootstrap needs at least {min} replicates, got {got}")]
    TooFewBootstrap { min: usize, got: usize },
    #[error("source {source_label} has {got} observations; at least {needed} required")]
    TooFewPerSource { source_label: String, needed: usize, got: usize },
    #[error("reps must be ≥ {min}, got {got}")]
    TooFewReplicates { min: usize, got: usize },
    #[error("n = {n} does not split into integral source sizes (n * p_{index} = {product})")]
    NonIntegralAllocation { n: usize, index: usize, product: f64 },
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("unknown table {0}; expected 1, 2, 3 or 4")]
    UnknownTable(u8),
    #[error("report serialization failed: {0}")]
    Serialization(String),
}
