use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition has {parts} parts but rank n = {n} allows at most {n}")]
    TooManyParts { parts: usize, n: usize },
    #[error("grid does not match shape: {0}")]
    ShapeMismatch(String),
    #[error("row condition violated at cell ({row},{col})")]
    RowViolation { row: usize, col: usize },
    #[error("column condition violated at cell ({row},{col})")]
    ColumnViolation { row: usize, col: usize },
    #[error("entry {value} at cell ({row},{col}) is outside [1, {max}]")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        max: usize,
    },
    #[error("color {color} is outside [1, {n}]")]
    InvalidColor { color: usize, n: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("crystal has more than {cap} vertices")]
    SizeLimitExceeded { cap: usize },
    #[error("colored digraph matching failed: {0}")]
    IsomorphismFailure(String),
    #[error("component of vertex {vertex} has {sources} sources")]
    NotPoppable { vertex: usize, sources: usize },
    #[error("orbit did not reach a fixed point within {0} steps")]
    NonTermination(usize),
    #[error("meet is undefined")]
    MeetUndefined,
    #[error("Demazure family inconsistent at {0}")]
    InconsistentFamily(String),
    #[error("vertex {vertex} has no unique minimal Demazure index ({candidates} candidates)")]
    NonUniqueMinimum { vertex: usize, candidates: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("too many colors: {n} (limit {limit})")]
    TooManyColors { n: usize, limit: usize },
    #[error("vertex {0} is not in the crystal")]
    UnknownVertex(String),
}

impl Error {
    /// Errors caused by the caller's input, as opposed to a failed
    /// mathematical check.
    pub fn is_invalid_input(&self) -> bool {
        matches!(
            self,
            Error::InvalidPartition(_)
                | Error::TooManyParts { .. }
                | Error::ShapeMismatch(_)
                | Error::RowViolation { .. }
                | Error::ColumnViolation { .. }
                | Error::EntryOutOfRange { .. }
                | Error::InvalidColor { .. }
                | Error::Parse(_)
                | Error::SizeLimitExceeded { .. }
                | Error::HypothesisViolated(_)
                | Error::InvalidPermutation(_)
                | Error::TooManyColors { .. }
                | Error::UnknownVertex(_)
        )
    }
}
