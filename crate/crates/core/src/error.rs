use thiserror::Error;

/// Errors produced by the codec library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("pattern space C({n},{k})*{q}^{k} does not fit in 64 bits")]
    PatternSpaceOverflow { n: usize, k: usize, q: u32 },

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid row: {0}")]
    InvalidRow(String),

    #[error("row has {row} symbols but the parameters have n = {n}")]
    DimensionMismatch { row: usize, n: usize },

    #[error("rank {rank} is outside [0, {total})")]
    RankOutOfRange { rank: u64, total: u64 },

    #[error("pattern table of {patterns} entries exceeds the memory budget of {budget}")]
    MemoryBudgetExceeded { patterns: u64, budget: u64 },

    #[error("exhaustive greedy needs {candidates} candidate rows, above the limit of {limit}")]
    CandidateSpaceExceeded { candidates: u128, limit: u64 },

    #[error("row {0} duplicates an earlier row")]
    DuplicateRow(usize),

    #[error("no row of the array covers the pattern")]
    NoCoveringRow,

    #[error("row index {index} is outside 1..={rows}")]
    IndexOutOfRange { index: usize, rows: usize },

    #[error("user position {position} is outside 1..={n}")]
    PositionOutOfRange { position: usize, n: usize },

    #[error("malformed decay sequence: {0}")]
    MalformedDecay(String),

    #[error("index {0} has zero probability")]
    ZeroProbability(usize),

    #[error("empty distribution")]
    EmptyDistribution,

    #[error("code lengths violate the Kraft inequality")]
    KraftViolation,

    #[error("codeword of length {0} exceeds the supported maximum")]
    CodewordTooLong(u32),

    #[error("invalid codeword bits: {0}")]
    InvalidCodeword(String),

    #[error("alphabet size {0} is not a power of two")]
    NotPowerOfTwo(u32),

    #[error("pigeonhole lower bound needs k >= 2")]
    LowerBoundNotApplicable,
}

pub type Result<T> = std::result::Result<T, Error>;
