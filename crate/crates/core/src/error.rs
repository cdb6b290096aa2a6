use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TournamentError {
    #[error("tournament order {0} out of range")]
    Order(usize),
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("pair ({0}, {1}) given more than once")]
    DuplicatePair(usize, usize),
    #[error("pair ({0}, {1}) has no orientation")]
    MissingPair(usize, usize),
    #[error("vertex {0} listed twice")]
    DuplicateVertex(usize),
    #[error("empty vertex subset")]
    EmptySubset,
    #[error("not strong: {0} strong components")]
    NotStrong(usize),
    #[error("a Hamiltonian circuit needs at least 3 vertices, got {0}")]
    CircuitTooSmall(usize),
    #[error("permutation search limited to 8 vertices, got {0}")]
    IsoTooLarge(usize),
    #[error("{0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("zero-length block at position {0}")]
    ZeroBlock(usize),
    #[error("block form needs at least one block")]
    NoBlocks,
    #[error("invalid pattern {0:?}: {1}")]
    Syntax(String, &'static str),
    #[error("position range {0}..={1} invalid for a {2}-vertex pattern")]
    Range(usize, usize, usize),
    #[error("position {0} is not interior to a {1}-vertex pattern")]
    NotInterior(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("tournament has {tournament} vertices but the pattern has {pattern}")]
    SizeMismatch { tournament: usize, pattern: usize },
    #[error("base solver handles at most {limit} vertices, got {n}")]
    TooLarge { n: usize, limit: usize },
    #[error("vertex {0} is neither a source nor a sink")]
    NotExtreme(usize),
    #[error("pattern is directed; use the directed Hamiltonian path instead")]
    DirectedPattern,
    #[error("excluded pair: pattern {pattern} with the rest forming a cyclic triangle")]
    ExceptionalPair { pattern: String },
    #[error("requested origin {0} is not available")]
    OriginUnavailable(usize),
    #[error("invalid origin constraint: {0}")]
    Constraint(&'static str),
    #[error("no copy of {pattern} in {code}, which is not one of the three exceptions")]
    Unexplained { code: String, pattern: String },
    #[error(transparent)]
    Tournament(#[from] TournamentError),
}
