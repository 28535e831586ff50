//! Error types shared across the solver pipeline.

use thiserror::Error;

/// Geometry construction and validation failures.
#[derive(Debug, Error)]
pub enum GeomError {
    #[error("coordinate is not finite")]
    NonFiniteCoordinate,
    #[error("path is not closed: edge {edge} ends {gap:.3e} away from the next start")]
    OpenPath { edge: usize, gap: f64 },
    #[error("arc endpoint lies {dev:.3e} off its circle (edge {edge})")]
    OffCircle { edge: usize, dev: f64 },
    #[error("arc has invalid radius {radius}")]
    BadRadius { radius: f64 },
    #[error("arc sweep angle {sweep} outside (0, 2pi)")]
    BadSweep { sweep: f64 },
    #[error("path self-intersects (edges {a} and {b})")]
    SelfIntersection { a: usize, b: usize },
    #[error("path has (near-)zero signed area")]
    ZeroArea,
    #[error("region has no positive-area loop")]
    NoOuterLoop,
    #[error("hole loop {hole} is not inside an outer loop")]
    HoleOutsideOuter { hole: usize },
    #[error("region area {area} is not positive")]
    NonPositiveArea { area: f64 },
    #[error("primitive is degenerate: {0}")]
    DegeneratePrimitive(String),
    #[error("polygon is not convex at vertex {vertex}")]
    NotConvex { vertex: usize },
    #[error("particle {index} is not strictly inside the domain (clearance {clearance:.3e})")]
    ParticleOutsideDomain { index: usize, clearance: f64 },
    #[error("particles {a} and {b} overlap or touch (gap {gap:.3e})")]
    ParticlesOverlap { a: usize, b: usize, gap: f64 },
    #[error("scale factor {0} must be positive")]
    BadScaleFactor(f64),
}

/// A construction the exact pipeline does not support; callers are pointed
/// at the raster oracle instead.
#[derive(Debug, Error)]
#[error("unsupported geometry: {reason}; use the raster oracle (`oracle` subcommand) for this scene")]
pub struct UnsupportedGeometry {
    pub reason: String,
}

impl UnsupportedGeometry {
    pub fn new(reason: impl Into<String>) -> Self {
        UnsupportedGeometry {
            reason: reason.into(),
        }
    }
}

/// Top-level solver error.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Unsupported(#[from] UnsupportedGeometry),
    #[error("morphological opening is empty: radius {radius} >= inradius {inradius}")]
    EmptyOpening { radius: f64, inradius: f64 },
    #[error("no Cheeger candidate family admitted a root for this scene")]
    NoCheegerCandidate,
    #[error("internal consistency violation: {0}")]
    Inconsistent(String),
    #[error("raster resolution too coarse: {0}")]
    Resolution(String),
    #[error("infeasible grid problem: {0}")]
    Infeasible(String),
    #[error("trial function violates constraints: {0}")]
    ConstraintViolation(String),
    #[error("parameter out of range: {0}")]
    DomainError(String),
    #[error("scene validation failed at {pointer}: {message}")]
    SceneValidation { pointer: String, message: String },
    #[error("scene parse error: {0}")]
    SceneParse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
