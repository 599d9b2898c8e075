use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("letter {letter} at token {pos} is outside the alphabet 1..{rank}")]
    LetterOutOfRange { pos: usize, letter: u64, rank: u8 },

    #[error("rank must be at least {min}, got {rank}")]
    BadRank { rank: usize, min: usize },

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(u8, u8),

    #[error("pivot {0} does not occur in the word")]
    AbsentPivot(String),

    #[error("index pair ({i}, {j}) is not in 1 <= i < j <= {n}")]
    IndexPair { i: u8, j: u8, n: u8 },

    #[error("matrix dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),

    #[error("entry ({row}, {col}) below the diagonal is not zero")]
    NotUpperTriangular { row: usize, col: usize },

    #[error("tropical product overflowed 64-bit arithmetic")]
    Overflow,

    #[error("variable {0} has no assigned image")]
    Unassigned(String),

    #[error("search grid has {needed} points, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("word length {len} exceeds the limit {limit}")]
    TooLong { len: usize, limit: usize },

    #[error("starred letter {0} in a plain identity; use the involution checker")]
    StarInPlain(String),

    #[error("family parameter k must be at least 2, got {0}")]
    FamilyParameter(usize),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
