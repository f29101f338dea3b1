use thiserror::Error;

/// Errors raised while reading TSPLIB instances or probability files.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("line {line}: missing required key {key}")]
    MissingKey { line: usize, key: &'static str },
    #[error("line {line}: unsupported EDGE_WEIGHT_TYPE {found:?} (only EUC_2D is supported)")]
    UnsupportedEdgeWeight { line: usize, found: String },
    #[error(
        "line {line}: DIMENSION is {expected} but NODE_COORD_SECTION holds {found} coordinates"
    )]
    DimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: malformed {field}: {text:?}")]
    Malformed {
        line: usize,
        field: &'static str,
        text: String,
    },
    #[error("line {line}: node id {id} out of range 1..={n}")]
    NodeOutOfRange { line: usize, id: usize, n: usize },
    #[error("line {line}: duplicate node id {id}")]
    DuplicateNode { line: usize, id: usize },
    #[error("line {line}: negative probability {value}")]
    NegativeProbability { line: usize, value: f64 },
    #[error("probability file holds {found} values, instance has {expected} vertices")]
    CountMismatch { expected: usize, found: usize },
    #[error("probability values sum to zero")]
    ZeroMass,
}

/// Violations of the `Instance` / `Solution` invariants.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ValidationError {
    #[error("instance has no vertices")]
    Empty,
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} is never visited")]
    Uncovered(usize),
    #[error("vertex {0} is visited more than once")]
    Repeated(usize),
    #[error("expected {expected} routes, got {found}")]
    RouteCount { expected: usize, found: usize },
    #[error("route {route} starts at {found}, expected start vertex {expected}")]
    WrongStart {
        route: usize,
        expected: usize,
        found: usize,
    },
    #[error("route {0} is empty")]
    EmptyRoute(usize),
    #[error("probability vector has {found} entries, expected {expected}")]
    ProbabilityLength { expected: usize, found: usize },
    #[error("probability of vertex {vertex} is {value}, outside [0, 1]")]
    ProbabilityRange { vertex: usize, value: f64 },
    #[error("probabilities sum to {0}, expected 1")]
    ProbabilityMass(f64),
    #[error("cost matrix is not a symmetric non-negative matrix with zero diagonal at ({0}, {1})")]
    CostMatrix(usize, usize),
    #[error("vehicle count must be at least 1")]
    NoVehicles,
    #[error("cached cost {cached} differs from evaluated cost {actual}")]
    CostMismatch { cached: f64, actual: f64 },
}

/// Invalid solver parameters.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("{name} must be at least {min}, got {value}")]
    TooSmall {
        name: &'static str,
        min: f64,
        value: f64,
    },
    #[error("beta schedule must not be empty")]
    EmptyBeta,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KMeansError {
    #[error("cannot form {k} clusters from {points} points")]
    TooFewPoints { k: usize, points: usize },
    #[error("k must be at least 1")]
    ZeroClusters,
}

/// Top-level error for solver and harness entry points.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    KMeans(#[from] KMeansError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("suite manifest: {0}")]
    Manifest(String),
    #[error("bks must be positive, got {0}")]
    NonPositiveBks(f64),
    #[error("no run records to summarize")]
    NoRecords,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
