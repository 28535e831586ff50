//! Exact planar regions bounded by line segments and circular arcs.
//!
//! Everything downstream (morphology, the Cheeger solver, the enclosure
//! step) measures geometry through this module. Areas come from Green's
//! theorem with exact circular-segment corrections, perimeters from exact
//! arc lengths; no polygonal approximation of circles happens anywhere.

mod edge;
mod hull;
mod path;
mod primitive;
mod region;

pub use edge::{ArcEdge, CircularArc, Orientation};
pub use hull::{convex_envelope, convex_hull_points, is_convex_region};
pub use path::ArcPath;
pub use primitive::{
    containment_clearance, disk_region, polygon_region, primitive_gap, ShapePrimitive,
};
pub use region::{difference_annulus, ArcRegion};

pub(crate) use primitive::polygon_area as primitive_polygon_area;

use crate::error::GeomError;

/// Coordinate tolerance for closure and on-circle checks.
pub const COORD_EPS: f64 = 1e-9;

/// A point in the nondimensional plane (lengths scaled by sqrt of the
/// particle area).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn add(self, other: Point) -> Point {
        Point::new(self.x + other.x, self.y + other.y)
    }

    pub fn sub(self, other: Point) -> Point {
        Point::new(self.x - other.x, self.y - other.y)
    }

    pub fn scale(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product, `self × other`.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point) -> f64 {
        self.sub(other).norm()
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn unit(self) -> Point {
        let n = self.norm();
        Point::new(self.x / n, self.y / n)
    }

    /// Rotated by +90 degrees.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub(crate) fn check_finite(self) -> Result<(), GeomError> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(GeomError::NonFiniteCoordinate)
        }
    }
}

/// Axis-aligned bounding box.
#[derive(Clone, Copy, Debug)]
pub struct Bbox {
    pub min: Point,
    pub max: Point,
}

impl Bbox {
    pub fn empty() -> Self {
        Bbox {
            min: Point::new(f64::INFINITY, f64::INFINITY),
            max: Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    pub fn include(&mut self, p: Point) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
    }

    pub fn merge(&mut self, other: &Bbox) {
        self.include(other.min);
        self.include(other.max);
    }

    pub fn expanded(&self, pad: f64) -> Bbox {
        Bbox {
            min: Point::new(self.min.x - pad, self.min.y - pad),
            max: Point::new(self.max.x + pad, self.max.y + pad),
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn intersects(&self, other: &Bbox) -> bool {
        self.min.x <= other.max.x
            && other.min.x <= self.max.x
            && self.min.y <= other.max.y
            && other.min.y <= self.max.y
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }
}
