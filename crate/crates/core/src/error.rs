use thiserror::Error;

/// Errors raised by partition, symbol and construction routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parts must be positive and weakly decreasing, got {0:?}")]
    InvalidParts(Vec<u32>),

    #[error("cannot parse partition literal {0:?}")]
    Parse(String),

    #[error("modulus p must be at least 2, got {0}")]
    InvalidModulus(u32),

    #[error("partition {partition} is not {p}-regular")]
    NotRegular { partition: String, p: u32 },

    #[error("operation needs a non-empty partition")]
    EmptyPartition,

    #[error("block index ({i}, {j}) out of range for {t} blocks")]
    BlockIndex { i: usize, j: usize, t: usize },

    #[error("index {index} out of range for a sequence of length {len}")]
    SequenceIndex { index: usize, len: usize },

    #[error("rectangle ({l}^{a}) is not a {p}-core")]
    NotACore { l: u32, a: u32, p: u32 },

    #[error("vector {0:?} is not the n-vector of an empty or rectangular core")]
    NotRectangular(Vec<i64>),

    #[error("no partition realizes the Mullineux symbol at column {column}")]
    Unrealizable { column: usize },

    #[error("residue symbol column {column} admits no valid Mullineux column")]
    InvalidResidueSymbol { column: usize },

    #[error("partition {partition} is not a JS-partition for p = {p}")]
    NotJs { partition: String, p: u32 },

    #[error("column ({x}, {y}) is not reachable in the type-{alpha} construction graph")]
    Unreachable { x: u32, y: u32, alpha: u32 },

    #[error("no edge ({0}) in the construction graph")]
    IllegalEdge(String),

    #[error("end value vector {0:?} does not match any JS case")]
    Unclassified(Vec<i64>),

    #[error("JS structure violated: {0}")]
    JsViolation(String),

    #[error("weight {0} is odd; Mullineux fixed partitions have even weight")]
    OddWeight(u32),

    #[error("core must be empty or a square")]
    NotSquare,

    #[error("construction needs p > 2, got {0}")]
    NeedsOddPrime(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
