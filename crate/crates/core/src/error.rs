use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus n = {0} is outside the supported range [2, {max}]", max = crate::dihedral::MAX_MODULUS)]
    ModulusOutOfRange(u32),
    #[error("elements from D_{{2*{left}}} and D_{{2*{right}}} cannot be combined")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("connection set contains the identity")]
    IdentityInSet,
    #[error("connection set is not inverse-closed: {element} is present but {inverse} is not")]
    NotInverseClosed { element: String, inverse: String },
    #[error("connection set lists {0} more than once")]
    DuplicateElement(String),
    #[error("cannot parse connection-set token `{0}` (expected r<k> or s<k>)")]
    BadToken(String),
    #[error("connection set does not generate D_{{2*{0}}}; the Cayley graph is disconnected")]
    NotGenerating(u32),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("witness set is empty")]
    EmptyWitnessSet,
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("graph has {order} vertices, above the configured cap of {cap}")]
    VertexCapExceeded { order: usize, cap: usize },
    #[error("no resolving set of size <= {max_k} exists (lower bound {lower_bound}); raise max_k")]
    SubsetCapExceeded { max_k: usize, lower_bound: usize },
    #[error("metric dimension search needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("witness set does not resolve the graph: vertices {0} and {1} share a representation")]
    NotResolving(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed graph document: {0}")]
    MalformedDocument(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
