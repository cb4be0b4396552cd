use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element id {id} out of range 1..={n}")]
    ElementOutOfRange { id: usize, n: usize },
    #[error("support of {size} elements exceeds the limit of {limit}")]
    SupportTooLarge { size: usize, limit: usize },
    #[error("ground set of {n} elements too large for brute force (limit {limit})")]
    GroundSetTooLarge { n: usize, limit: usize },
    #[error("function is not submodular: {0}")]
    NotSubmodular(String),
    #[error("forced_in and forced_out name the same element {0}")]
    InfeasibleForcing(usize),
    #[error("invalid penalty: {0}")]
    InvalidPenalty(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("range [{lo}, {hi}] is not an integral multiple of eps {eps}")]
    RangeMisaligned { lo: String, hi: String, eps: String },
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
    #[error("empty parameter domain")]
    EmptyDomain,
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("capacity overflow: {0}")]
    CapacityOverflow(String),
    #[error("vertex {0} has no finite breakpoint inside the computed range")]
    MissingBreakpoint(usize),
    #[error("vertex {0} is infinite in one cut but finite in the other")]
    BreakpointMismatch(usize),
    #[error("order is not a permutation of the graph vertices")]
    InvalidPermutation,
}

pub type Result<T> = std::result::Result<T, Error>;
