use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the combinatorial core and the file formats.
#[derive(Debug, Error)]
pub enum Error {
    #[error("Euler mismatch: V - E + F = {v} - {e} + {f} != 2 (inconsistent rotation system)")]
    EulerMismatch { v: usize, e: usize, f: usize },
    #[error("not an st-graph: {0}")]
    NotStGraph(String),
    #[error("directed cycle through {0}")]
    HasDirectedCycle(String),
    #[error("face is not globular: {0}")]
    FaceNotGlobular(String),
    #[error("paths {0} and {1} are not comparable")]
    NotComparable(String, String),
    #[error("the glob relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("marking is not admissible: {0}")]
    NotAdmissible(String),
    #[error("not a globular subgraph: {0}")]
    NotGlobularSubgraph(String),
    #[error("pasting diagram is not generated by wide subgraphs")]
    NotWideGenerated,
    #[error("not an inclusion of pasting diagrams: {0}")]
    NotIncluded(String),
    #[error("pasting diagram is not complete: {0}")]
    NotComplete(String),
    #[error("pasting diagram is not the minimal complete one on its graph")]
    NotMinimalComplete,
    #[error("invalid labeling: {0}")]
    InvalidLabeling(String),
    #[error("graph is not 2-connected (cut vertex {0})")]
    NotTwoConnected(String),
    #[error("graph has fewer than two interior faces")]
    TooFewFaces,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("certificate search exhausted; stuck subcomplex has {missing} missing simplices, first {first}")]
    SearchExhausted { missing: usize, first: String },
    #[error("filler oracle failed: {0}")]
    OracleFailure(String),
    #[error("incompatible square: {0}")]
    Incompatible(String),
    #[error("bad inclusion: {0}")]
    BadInclusion(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Error {
        Error::Parse { line, msg: msg.into() }
    }
}
