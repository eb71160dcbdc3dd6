use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("operation requires a nonempty permutation")]
    EmptyPermutation,
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("k = {k} out of range for a permutation of length {n}")]
    InvalidK { k: usize, n: usize },
    #[error("permutation is not a node of the requested generating tree: {0}")]
    NotInTree(String),
    #[error("permutation does not avoid the pattern {0}")]
    NotAvoiding(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("permutation is outside the bijection's domain: {0}")]
    NotInDomain(String),
    #[error("invalid admissible sequence: {0}")]
    InvalidSequence(String),
    #[error("ill-posed functional equation: {0}")]
    IllPosed(String),
    #[error("pattern set is not among the tabulated classes")]
    NotTabulated,
    #[error("n = {0} is below the stated range of this identity")]
    OutOfStatedRange(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
