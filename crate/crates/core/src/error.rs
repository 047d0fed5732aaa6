use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid allocation: {0}")]
    InvalidAllocation(String),

    #[error("malformed linear program: {0}")]
    MalformedLp(String),

    #[error("consumption graph contains a cycle")]
    CyclicInput,

    /// A shared item whose sharers do not all value it with the same strict sign.
    #[error("item {item} is shared by agents that do not agree on its sign")]
    MixedSignShare { item: usize },

    #[error("enumeration of {size} allocations exceeds the cap of {cap}")]
    CapExceeded { size: u128, cap: u128 },

    /// An invariant that the algorithm guarantees did not hold.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
