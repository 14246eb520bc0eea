use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("enumeration budget of {cap} partitions exceeded")]
    BudgetExceeded { cap: usize },
    #[error("series degree bounds differ ({left} vs {right})")]
    MismatchedBounds { left: usize, right: usize },
    #[error("engines disagree at d={d}, n={n}: series={series}, dp={dp}")]
    EngineDisagreement {
        d: u64,
        n: u64,
        series: BigInt,
        dp: BigInt,
    },
    #[error("input outside the map's domain: {0}")]
    Domain(String),
    /// A map produced an object violating its own output contract. Always a bug.
    #[error("internal invariant failed: {0}")]
    Invariant(String),
    #[error("no crossover found for n <= {0}")]
    NoCrossover(u64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn hypothesis<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Hypothesis(msg.into()))
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
