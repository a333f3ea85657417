use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("loop at vertex {0} rejected: graphs are loopless")]
    LoopRejected(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("unknown edge {0}")]
    UnknownEdge(usize),
    #[error("identifiers must be strictly increasing")]
    UnsortedIds,
    #[error("sequence is not an arc: {0}")]
    NotAnArc(String),
    #[error("arcs are not conjunctive")]
    NotConjunctive,
    #[error("segment [{0}, {1}] out of range for an arc of length {2}")]
    InvalidSegment(usize, usize, usize),
    #[error("subgraph is not a hub: {0}")]
    NotInHub(String),
    #[error("partition axiom ({axiom}) violated: {witness}")]
    AxiomViolation { axiom: char, witness: String },
    #[error("partitioned graph carries no link provenance")]
    NotALinkPartition,
    #[error("vertex {vertex} sees {seen} colours among its neighbours, more than {r}")]
    PremiseViolated { vertex: usize, seen: usize, r: usize },
    #[error("colouring is not proper at edge {0}")]
    ImproperColoring(usize),
    #[error("graph has {n} vertices, above the exact-search limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("link graph has no edge")]
    EmptyLinkGraph,
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph is not {0}-minimal")]
    NotMinimal(usize),
    #[error("ell must be at least {0}")]
    EllTooSmall(i64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
