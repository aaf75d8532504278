use thiserror::Error;

use crate::interval::Vertex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("endpoint {0} is used more than once")]
    DuplicateEndpoint(i64),
    #[error("interval of vertex {vertex} is degenerate: [{left}, {right}]")]
    DegenerateInterval {
        vertex: Vertex,
        left: i64,
        right: i64,
    },
    #[error("vertex id {0} appears more than once")]
    DuplicateVertexId(Vertex),
    #[error("vertex id {id} out of range for {n} intervals")]
    VertexIdOutOfRange { id: Vertex, n: usize },
    #[error("negative weight on vertex {0}")]
    NegativeWeight(Vertex),
    #[error("weight vector has length {got}, expected {expected}")]
    WeightCount { got: usize, expected: usize },
    #[error("empty vertex set")]
    EmptySet,
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("vertex set does not admit a normal path")]
    NormalizationFailed,
    #[error("search tree exceeded {0} nodes")]
    BudgetExceeded(u64),
    #[error("graph already carries dummy vertices")]
    DoubleAugment,
    #[error("deletion set has no dummy vertices")]
    MissingDummies,
    #[error("invalid special partition: {0}")]
    InvalidSpecialPartition(String),
    #[error("dynamic program parent chain is corrupt")]
    CorruptParentChain,
    #[error("lifting failed: {0}")]
    LiftFailure(String),
    #[error("graph has {n} vertices, oracle limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("weights cannot be scaled to 64-bit integers")]
    WeightOverflow,
    #[error("pipeline input must have unit weights")]
    NonUnitWeights,
    #[error("invariant violated: {0}")]
    Invariant(String),
}
