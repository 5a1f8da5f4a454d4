use thiserror::Error;

/// Every failure mode the engine reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid drawing: {0}")]
    InvalidDrawing(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown face `{0}`")]
    UnknownFace(String),
    #[error("drawings are of different graphs: {0}")]
    GraphMismatch(String),
    #[error("planarization is disconnected")]
    Disconnected,
    #[error("drawings do not share the same extended rotation system")]
    NotSameErs,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("not a tricell: {0}")]
    NotATricell(String),
    #[error("prefix subdrawings are not isomorphic: {0}")]
    NotIsomorphicPrefix(String),
    #[error("edge `{0}` is missing from one of the drawings")]
    EdgeMissing(String),
    #[error("no free lens: {0}")]
    NoFreeLens(String),
    #[error("vertex `{0}` lies inside the triangle")]
    VertexInsideTriangle(String),
    #[error("not a crossing triangle: {0}")]
    NotACrossingTriangle(String),
    #[error("graph is not complete multipartite: {0}")]
    NotCompleteMultipartite(String),
    #[error("extended rotation systems differ")]
    ErsMismatch,
    #[error("outer face equals p")]
    OuterEqualsP,
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("degenerate placement: {0}")]
    DegeneratePlacement(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
