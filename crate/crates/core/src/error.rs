use thiserror::Error;

/// Failures raised while validating shapes or building locator indexes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("coordinate {index} is not finite")]
    NonFinite { index: usize },
    #[error("shape needs at least {required} vertices, found {found}")]
    TooFewVertices { found: usize, required: usize },
    #[error("edge endpoints coincide (length {length:e})")]
    DegenerateEdge { length: f64 },
    #[error("vertex {index} repeats an earlier vertex")]
    RepeatedVertex { index: usize },
    #[error("shape is not strictly convex at vertex {vertex}")]
    NotConvex { vertex: usize },
    #[error("face {face} is degenerate (collinear or too few vertices)")]
    DegenerateFace { face: usize },
    #[error("face {face} deviates from its plane by {deviation:e}")]
    NonPlanarFace { face: usize, deviation: f64 },
    #[error("face {face} references vertex {vertex}, which does not exist")]
    BadVertexIndex { face: usize, vertex: usize },
    #[error("interior point lies on the plane of face {face}")]
    InteriorOnPlane { face: usize },
    #[error("Euler relation violated: V - E + F = {v} - {e} + {f} != 2")]
    EulerViolation { v: usize, e: usize, f: usize },
    #[error("edge ({0}, {1}) is not shared by exactly two faces")]
    NonManifoldEdge(usize, usize),
    #[error("direction from the reference point is zero")]
    ZeroDirection,
    #[error("reference point is not strictly interior (constraint {index} evaluates to {value:e})")]
    ReferenceNotInterior { index: usize, value: f64 },
    #[error("affine map is singular (determinant {det:e})")]
    SingularAffine { det: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, GeometryError>;
