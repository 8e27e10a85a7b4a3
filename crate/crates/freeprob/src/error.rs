use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("partition is crossing, not in NC")]
    Crossing,
    #[error("partition is not a member of the requested lattice")]
    NotInLattice,
    #[error("colored word supplied to an uncolored family")]
    ColoredWordNotAllowed,
    #[error("singular Gram matrix at word length {k}, N = {n}")]
    SingularGram { k: usize, n: u64 },
    #[error("singular matrix")]
    Singular,
    #[error("S-transform undefined at this truncation (first moment is zero)")]
    UndefinedSTransform,
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("no real density: {0}")]
    NoRealDensity(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("size {size} exceeds the configured cap {cap}")]
    TooLarge { size: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
