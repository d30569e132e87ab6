use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by shape validation and the analysis operations built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite coordinate at vertex {0}")]
    NonFinite(usize),
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("consecutive vertices {0} and {1} coincide")]
    DuplicateVertex(usize, usize),
    #[error("edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(f64),

    #[error("facet {facet} references vertex {index}, but only {count} vertices exist")]
    IndexOutOfRange {
        facet: usize,
        index: usize,
        count: usize,
    },
    #[error("facet {0} is degenerate (fewer than 3 distinct vertices or zero area)")]
    DegenerateFacet(usize),
    #[error("edge ({0}, {1}) is shared by {2} facets")]
    NonManifoldEdge(usize, usize, usize),
    #[error("edge ({0}, {1}) belongs to a single facet; surface is not closed")]
    NotClosed(usize, usize),
    #[error("edge ({0}, {1}) is traversed in the same direction by both facets")]
    InconsistentOrientation(usize, usize),
    #[error("Euler characteristic is {0}, expected 2")]
    EulerCharacteristicMismatch(i64),
    #[error("facet {facet} deviates {deviation:e} from its plane")]
    NonPlanarFacet { facet: usize, deviation: f64 },

    #[error("half-space normal has zero length")]
    ZeroNormal,
    #[error("shape is not convex")]
    NotConvex,
    #[error("constraints leave no interior")]
    Infeasible,
    #[error("constraints do not enclose a bounded region")]
    Unbounded,
    #[error("linear program failed: {0}")]
    NumericalFailure(String),
    #[error("ball does not belong to this shape: {0}")]
    MismatchedShape(String),

    #[error("line passes through the origin")]
    LineThroughOrigin,
    #[error("shape is not tangential: its inscribed ball misses at least one boundary element")]
    NotTangential,
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("step must be positive, got {0}")]
    NonPositiveStep(f64),
    #[error("step {h} is too large for radius {r} (need 2h < r)")]
    StepTooLarge { h: f64, r: f64 },
    #[error("sample {s} is outside (0, {r})")]
    SampleOutOfRange { s: f64, r: f64 },

    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(f64),
    #[error("epsilon {eps} must be below {limit}")]
    EpsilonTooLarge { eps: f64, limit: f64 },
    #[error("need at least 2 levels, got {0}")]
    TooFewLevels(usize),

    #[error("regular polygon needs n >= 3, got {0}")]
    BadN(usize),
    #[error("need 3 <= n_min <= n_max, got {0}..{1}")]
    BadRange(usize, usize),
    #[error("unknown shape kind `{0}`")]
    UnknownKind(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid input: {0}")]
    Format(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
