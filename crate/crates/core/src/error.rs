use thiserror::Error;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("face list is empty")]
    NoFaces,
    #[error("vertex index {index} out of range in face {face} (vertex count {vertex_count})")]
    IndexOutOfRange {
        face: usize,
        index: usize,
        vertex_count: usize,
    },
    #[error("degenerate face {face}: {reason}")]
    DegenerateFace { face: usize, reason: String },
    #[error("edge {{{0}, {1}}} is not shared by exactly two oppositely oriented faces")]
    NonManifoldEdge(usize, usize),
    #[error("Euler relation violated: V - E + F = {characteristic}, expected 2")]
    EulerViolation { characteristic: i64 },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has a self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("unknown seed '{0}'")]
    UnknownSeed(String),
    #[error("complex is not simplicial (face {face} has {len} vertices)")]
    NotSimplicial { face: usize, len: usize },
    #[error(
        "eigenvalues {upper} and {lower} are separated by {gap:e}, within 10x the grouping tolerance {tol:e}"
    )]
    ToleranceAmbiguity {
        upper: f64,
        lower: f64,
        gap: f64,
        tol: f64,
    },
    #[error("realization is not convex (face {face})")]
    NotConvex { face: usize },
    #[error("origin is not strictly inside the realization (face {face})")]
    OriginOutside { face: usize },
    #[error("face {face} is not planar (deviation {deviation:e})")]
    FaceNotPlanar { face: usize, deviation: f64 },
    #[error("iteration did not converge after {steps} steps (last shape change {last_change:e}); {detail}")]
    NoConvergence {
        steps: usize,
        last_change: f64,
        detail: String,
    },
    #[error("affine fit is singular: realization has rank {rank} < {dim}")]
    SingularFit { rank: usize, dim: usize },
    #[error("automorphism search exceeded its budget of {budget} nodes")]
    SearchBudgetExceeded { budget: usize },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("expected {expected}-dimensional coordinates, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 3,
            Error::NoConvergence { .. } => 4,
            _ => 2,
        }
    }

    /// Stable machine-readable kind tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NoFaces => "NoFaces",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::DegenerateFace { .. } => "DegenerateFace",
            Error::NonManifoldEdge(..) => "NonManifoldEdge",
            Error::EulerViolation { .. } => "EulerViolation",
            Error::Disconnected => "Disconnected",
            Error::SelfLoop(_) => "SelfLoop",
            Error::UnknownSeed(_) => "UnknownSeed",
            Error::NotSimplicial { .. } => "NotSimplicial",
            Error::ToleranceAmbiguity { .. } => "ToleranceAmbiguity",
            Error::NotConvex { .. } => "NotConvex",
            Error::OriginOutside { .. } => "OriginOutside",
            Error::FaceNotPlanar { .. } => "FaceNotPlanar",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::SingularFit { .. } => "SingularFit",
            Error::SearchBudgetExceeded { .. } => "SearchBudgetExceeded",
            Error::Parse { .. } => "ParseError",
            Error::Dimension { .. } => "DimensionError",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Io(_) => "Io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
