use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("curve needs an even node count of at least 16, got {0}")]
    NodeCount(usize),
    #[error("node {index} leaves the half-plane: y = {y}")]
    BelowHalfPlane { index: usize, y: f64 },
    #[error("node {index} is not finite")]
    NonFinite { index: usize },
    #[error("segment {index} has zero length")]
    DegenerateSegment { index: usize },
    #[error("mesh quality ratio {ratio:.3} exceeds limit {limit}")]
    MeshQuality { ratio: f64, limit: f64 },
    #[error("total curvature {raw} is not within {tol:e} of an integer (curve under-resolved)")]
    Resolution { raw: f64, tol: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
    #[error("time step {dt:e} fell below floor {floor:e}")]
    StepFloor { dt: f64, floor: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
