use std::f64::consts::PI;

use super::edge::{ArcEdge, Orientation};
use super::path::ArcPath;
use super::region::ArcRegion;
use super::Point;
use crate::error::GeomError;

/// The shape vocabulary scenes are written in: disks, axis-aligned
/// rectangles, and convex CCW polygons.
#[derive(Clone, Debug, PartialEq)]
pub enum ShapePrimitive {
    Disk {
        center: Point,
        radius: f64,
    },
    Rect {
        center: Point,
        width: f64,
        height: f64,
    },
    Polygon {
        vertices: Vec<Point>,
    },
}

impl ShapePrimitive {
    pub fn disk(center: Point, radius: f64) -> Self {
        ShapePrimitive::Disk { center, radius }
    }

    pub fn rect(center: Point, width: f64, height: f64) -> Self {
        ShapePrimitive::Rect {
            center,
            width,
            height,
        }
    }

    pub fn square(center: Point, side: f64) -> Self {
        Self::rect(center, side, side)
    }

    pub fn polygon(vertices: Vec<Point>) -> Self {
        ShapePrimitive::Polygon { vertices }
    }

    pub fn validate(&self) -> Result<(), GeomError> {
        match self {
            ShapePrimitive::Disk { center, radius } => {
                center.check_finite()?;
                if !(*radius > 0.0) || !radius.is_finite() {
                    return Err(GeomError::DegeneratePrimitive(format!(
                        "disk radius {radius}"
                    )));
                }
            }
            ShapePrimitive::Rect {
                center,
                width,
                height,
            } => {
                center.check_finite()?;
                if !(*width > 0.0) || !(*height > 0.0) {
                    return Err(GeomError::DegeneratePrimitive(format!(
                        "rect {width} x {height}"
                    )));
                }
            }
            ShapePrimitive::Polygon { vertices } => {
                if vertices.len() < 3 {
                    return Err(GeomError::DegeneratePrimitive(
                        "polygon needs at least 3 vertices".into(),
                    ));
                }
                for v in vertices {
                    v.check_finite()?;
                }
                check_convex_ccw(vertices)?;
            }
        }
        Ok(())
    }

    pub fn area(&self) -> f64 {
        match self {
            ShapePrimitive::Disk { radius, .. } => PI * radius * radius,
            ShapePrimitive::Rect { width, height, .. } => width * height,
            ShapePrimitive::Polygon { vertices } => polygon_area(vertices),
        }
    }

    pub fn perimeter(&self) -> f64 {
        match self {
            ShapePrimitive::Disk { radius, .. } => 2.0 * PI * radius,
            ShapePrimitive::Rect { width, height, .. } => 2.0 * (width + height),
            ShapePrimitive::Polygon { vertices } => {
                let n = vertices.len();
                (0..n)
                    .map(|i| vertices[i].dist(vertices[(i + 1) % n]))
                    .sum()
            }
        }
    }

    /// Corner vertices for rectangles and polygons, CCW.
    pub fn corners(&self) -> Option<Vec<Point>> {
        match self {
            ShapePrimitive::Disk { .. } => None,
            ShapePrimitive::Rect {
                center,
                width,
                height,
            } => {
                let (hw, hh) = (0.5 * width, 0.5 * height);
                Some(vec![
                    Point::new(center.x - hw, center.y - hh),
                    Point::new(center.x + hw, center.y - hh),
                    Point::new(center.x + hw, center.y + hh),
                    Point::new(center.x - hw, center.y + hh),
                ])
            }
            ShapePrimitive::Polygon { vertices } => Some(vertices.clone()),
        }
    }

    pub fn to_region(&self) -> ArcRegion {
        match self {
            ShapePrimitive::Disk { center, radius } => disk_region(*center, *radius),
            _ => {
                let v = self.corners().expect("non-disk has corners");
                polygon_region(&v)
            }
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        match self {
            ShapePrimitive::Disk { center, radius } => p.dist(*center) <= *radius,
            ShapePrimitive::Rect {
                center,
                width,
                height,
            } => {
                (p.x - center.x).abs() <= 0.5 * width && (p.y - center.y).abs() <= 0.5 * height
            }
            ShapePrimitive::Polygon { vertices } => {
                let n = vertices.len();
                (0..n).all(|i| {
                    let a = vertices[i];
                    let b = vertices[(i + 1) % n];
                    b.sub(a).cross(p.sub(a)) >= 0.0
                })
            }
        }
    }

    /// Distance from a point to this (filled convex) shape; zero inside.
    pub fn distance_to_point(&self, p: Point) -> f64 {
        match self {
            ShapePrimitive::Disk { center, radius } => (p.dist(*center) - radius).max(0.0),
            ShapePrimitive::Rect {
                center,
                width,
                height,
            } => {
                let dx = ((p.x - center.x).abs() - 0.5 * width).max(0.0);
                let dy = ((p.y - center.y).abs() - 0.5 * height).max(0.0);
                dx.hypot(dy)
            }
            ShapePrimitive::Polygon { vertices } => {
                if self.contains(p) {
                    return 0.0;
                }
                let n = vertices.len();
                (0..n)
                    .map(|i| point_segment_distance(p, vertices[i], vertices[(i + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }

    pub fn translated(&self, v: Point) -> ShapePrimitive {
        match self {
            ShapePrimitive::Disk { center, radius } => ShapePrimitive::Disk {
                center: center.add(v),
                radius: *radius,
            },
            ShapePrimitive::Rect {
                center,
                width,
                height,
            } => ShapePrimitive::Rect {
                center: center.add(v),
                width: *width,
                height: *height,
            },
            ShapePrimitive::Polygon { vertices } => ShapePrimitive::Polygon {
                vertices: vertices.iter().map(|q| q.add(v)).collect(),
            },
        }
    }

    /// Scales about the origin.
    pub fn scaled(&self, f: f64) -> ShapePrimitive {
        match self {
            ShapePrimitive::Disk { center, radius } => ShapePrimitive::Disk {
                center: center.scale(f),
                radius: radius * f,
            },
            ShapePrimitive::Rect {
                center,
                width,
                height,
            } => ShapePrimitive::Rect {
                center: center.scale(f),
                width: width * f,
                height: height * f,
            },
            ShapePrimitive::Polygon { vertices } => ShapePrimitive::Polygon {
                vertices: vertices.iter().map(|q| q.scale(f)).collect(),
            },
        }
    }
}

/// Separation between two convex primitives (surface to surface; negative
/// means overlap is possible and is reported as such).
pub fn primitive_gap(a: &ShapePrimitive, b: &ShapePrimitive) -> f64 {
    use ShapePrimitive::*;
    match (a, b) {
        (Disk { center: c1, radius: r1 }, Disk { center: c2, radius: r2 }) => {
            c1.dist(*c2) - r1 - r2
        }
        (
            Rect {
                center: c1,
                width: w1,
                height: h1,
            },
            Rect {
                center: c2,
                width: w2,
                height: h2,
            },
        ) => {
            let gx = (c1.x - c2.x).abs() - 0.5 * (w1 + w2);
            let gy = (c1.y - c2.y).abs() - 0.5 * (h1 + h2);
            if gx <= 0.0 && gy <= 0.0 {
                gx.max(gy) // negative: overlap depth along the easier axis
            } else {
                gx.max(0.0).hypot(gy.max(0.0))
            }
        }
        (Disk { center, radius }, other) | (other, Disk { center, radius }) => {
            let d = other.distance_to_point(*center);
            if d == 0.0 {
                // center inside the other shape: definite overlap
                -radius
            } else {
                d - radius
            }
        }
        (pa, pb) => convex_polygon_gap(
            &pa.corners().expect("polygonal"),
            &pb.corners().expect("polygonal"),
        ),
    }
}

/// Distance from a particle to the domain's boundary from the inside:
/// positive clearance means strictly contained.
pub fn containment_clearance(domain: &ShapePrimitive, particle: &ShapePrimitive) -> f64 {
    use ShapePrimitive::*;
    // Clearance of a point to the complement of the domain.
    let point_clearance = |p: Point| -> f64 {
        match domain {
            Disk { center, radius } => radius - p.dist(*center),
            Rect {
                center,
                width,
                height,
            } => {
                let cx = 0.5 * width - (p.x - center.x).abs();
                let cy = 0.5 * height - (p.y - center.y).abs();
                cx.min(cy)
            }
            Polygon { vertices } => {
                let n = vertices.len();
                (0..n)
                    .map(|i| {
                        let a = vertices[i];
                        let b = vertices[(i + 1) % n];
                        let e = b.sub(a);
                        e.cross(p.sub(a)) / e.norm()
                    })
                    .fold(f64::INFINITY, f64::min)
            }
        }
    };
    match particle {
        Disk { center, radius } => point_clearance(*center) - radius,
        _ => particle
            .corners()
            .expect("polygonal particle")
            .iter()
            .map(|&v| point_clearance(v))
            .fold(f64::INFINITY, f64::min),
    }
}

fn convex_polygon_gap(a: &[Point], b: &[Point]) -> f64 {
    // Brute-force over edge pairs and vertex-edge distances; fine for the
    // small polygons scenes use. Overlap detection via mutual containment.
    let pa = ShapePrimitive::Polygon {
        vertices: a.to_vec(),
    };
    let pb = ShapePrimitive::Polygon {
        vertices: b.to_vec(),
    };
    if a.iter().any(|&v| pb.contains(v)) || b.iter().any(|&v| pa.contains(v)) {
        return -1.0;
    }
    let mut best = f64::INFINITY;
    for &v in a {
        best = best.min(pb.distance_to_point(v));
    }
    for &v in b {
        best = best.min(pa.distance_to_point(v));
    }
    let n = a.len();
    let m = b.len();
    for i in 0..n {
        for j in 0..m {
            best = best.min(segment_segment_distance(
                a[i],
                a[(i + 1) % n],
                b[j],
                b[(j + 1) % m],
            ));
        }
    }
    best
}

pub(crate) fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b.sub(a);
    let t = (p.sub(a).dot(ab) / ab.dot(ab)).clamp(0.0, 1.0);
    p.dist(a.add(ab.scale(t)))
}

fn segment_segment_distance(a: Point, b: Point, c: Point, d: Point) -> f64 {
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}

pub(crate) fn polygon_area(v: &[Point]) -> f64 {
    let n = v.len();
    0.5 * (0..n).map(|i| v[i].cross(v[(i + 1) % n])).sum::<f64>()
}

pub(crate) fn check_convex_ccw(v: &[Point]) -> Result<(), GeomError> {
    let n = v.len();
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        let c = v[(i + 2) % n];
        let turn = b.sub(a).cross(c.sub(b));
        if turn <= 0.0 {
            return Err(GeomError::NotConvex { vertex: (i + 1) % n });
        }
    }
    Ok(())
}

/// A disk as two CCW half-circle arcs.
pub fn disk_region(center: Point, radius: f64) -> ArcRegion {
    let e = Point::new(center.x + radius, center.y);
    let w = Point::new(center.x - radius, center.y);
    ArcRegion::new(vec![ArcPath::new(vec![
        ArcEdge::arc(e, w, center, Orientation::Ccw),
        ArcEdge::arc(w, e, center, Orientation::Ccw),
    ])])
}

pub fn polygon_region(vertices: &[Point]) -> ArcRegion {
    let n = vertices.len();
    ArcRegion::new(vec![ArcPath::new(
        (0..n)
            .map(|i| ArcEdge::segment(vertices[i], vertices[(i + 1) % n]))
            .collect(),
    )])
}
