use thiserror::Error;

use crate::webs::WebId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point ({s}, {t}) coincides with a focus")]
    FocusCoincidence { s: f64, t: f64 },
    #[error("point ({s}, {t}) is outside the open positive quadrant")]
    OutsideQuadrant { s: f64, t: f64 },
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("target degenerates onto the quadrant boundary: {0}")]
    DegenerateTarget(String),
    #[error("chart point ({x}, {y}) is outside the domain of {web}")]
    OutsideDomain { web: WebId, x: f64, y: f64 },
    #[error("chart point ({x}, {y}) is within {margin:e} of the {web} domain boundary")]
    BoundaryTooClose { web: WebId, x: f64, y: f64, margin: f64 },
    #[error("direction {direction} is not a foliation of {web}")]
    UnsupportedDirection { web: WebId, direction: crate::webs::Direction },
    #[error("ratio {0} does not define a hyperbolic pencil circle")]
    DegeneratePencilMember(f64),
    #[error("circle center ({cx}, {cy}) is off the conic's symmetry axes")]
    AxisMismatch { cx: f64, cy: f64 },
    #[error("no certified tangent conic for k1 = {k1} (worst residual {residual:e})")]
    NoTangentConic { k1: f64, residual: f64 },
    #[error("invalid scale: {0}")]
    InvalidScale(String),
    #[error("hexagon vertex {vertex} left the domain of {web}")]
    LeftDomain { web: WebId, vertex: usize },
    #[error("no lattice line meets the window: {0}")]
    EmptyIntersection(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable variant name, used in machine-readable error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::FocusCoincidence { .. } => "FocusCoincidence",
            Error::OutsideQuadrant { .. } => "OutsideQuadrant",
            Error::OutOfRange(_) => "OutOfRange",
            Error::DegenerateTarget(_) => "DegenerateTarget",
            Error::OutsideDomain { .. } => "OutsideDomain",
            Error::BoundaryTooClose { .. } => "BoundaryTooClose",
            Error::UnsupportedDirection { .. } => "UnsupportedDirection",
            Error::DegeneratePencilMember(_) => "DegeneratePencilMember",
            Error::AxisMismatch { .. } => "AxisMismatch",
            Error::NoTangentConic { .. } => "NoTangentConic",
            Error::InvalidScale(_) => "InvalidScale",
            Error::LeftDomain { .. } => "LeftDomain",
            Error::EmptyIntersection(_) => "EmptyIntersection",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}
