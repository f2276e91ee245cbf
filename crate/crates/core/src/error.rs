use thiserror::Error;

/// Errors produced while decoding a serialized weight bundle.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("bad magic: expected \"MLCW\", found {0:?}")]
    BadMagic([u8; 4]),
    #[error("unsupported weight format version {0}")]
    UnsupportedVersion(u32),
    #[error("truncated payload while reading {0}")]
    Truncated(String),
    #[error("checksum mismatch: stored {stored:#010x}, computed {computed:#010x}")]
    ChecksumMismatch { stored: u32, computed: u32 },
    #[error("{0} unexpected trailing bytes after the last record")]
    TrailingBytes(usize),
    #[error("record name is not valid UTF-8")]
    InvalidName,
    #[error("duplicate record {0:?}")]
    DuplicateRecord(String),
    #[error("missing record {0:?}")]
    MissingRecord(String),
    #[error("shape mismatch for {name:?}: expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        name: String,
        expected: Vec<usize>,
        found: Vec<usize>,
    },
    #[error("invalid architecture descriptor: {0}")]
    InvalidArchitecture(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing DIMENSION keyword")]
    MissingDimension,
    #[error("unsupported EDGE_WEIGHT_TYPE {0:?}")]
    UnsupportedEdgeWeightType(String),
    #[error("unsupported EDGE_WEIGHT_FORMAT {0:?}")]
    UnsupportedEdgeWeightFormat(String),
    #[error("unsupported problem TYPE {0:?} (symmetric TSP only)")]
    UnsupportedProblemType(String),
    #[error("DIMENSION is {expected} but {found} entries were read")]
    CoordinateCountMismatch { expected: usize, found: usize },
    #[error("instance needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("reference optimum must be positive, got {0}")]
    NonPositiveOptimum(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("instance too large for exact solver: n = {n} > {max}")]
    InstanceTooLarge { n: usize, max: usize },
    #[error("infeasible edge ({0}, {1}): accept_edge called without an OK verdict")]
    Infeasible(usize, usize),
    #[error("construction did not complete: {0}")]
    Incomplete(String),
    #[error("instance has no coordinates to render")]
    NoCoordinates,
    #[error("an optimal tour is required for this policy")]
    MissingOptimalTour,
    #[error("model weights are required for this policy")]
    MissingWeights,
    #[error("unknown policy {0:?}")]
    UnknownPolicy(String),
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        expected: Vec<usize>,
        found: Vec<usize>,
    },
    #[error("weight file: {0}")]
    Format(#[from] FormatError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
