use super::edge::{ArcEdge, Orientation};
use super::path::ArcPath;
use super::primitive::ShapePrimitive;
use super::region::ArcRegion;
use super::{Point, COORD_EPS};
use crate::error::{Error, Result, UnsupportedGeometry};

/// Convex envelope of a particle set.
///
/// Supported inputs: any single primitive, a set of polygons/rectangles, or
/// a set of equal-radius disks (hull of centers dilated by the radius, so
/// straight hull edges joined by arcs). Mixed families are rejected rather
/// than approximated.
pub fn convex_envelope(particles: &[ShapePrimitive]) -> Result<ArcRegion> {
    if particles.is_empty() {
        return Err(UnsupportedGeometry::new("empty particle list").into());
    }
    if particles.len() == 1 {
        return Ok(particles[0].to_region());
    }
    let all_polygonal = particles
        .iter()
        .all(|p| !matches!(p, ShapePrimitive::Disk { .. }));
    if all_polygonal {
        let mut pts = Vec::new();
        for p in particles {
            pts.extend(p.corners().expect("polygonal"));
        }
        let hull = convex_hull_points(&pts);
        return Ok(super::primitive::polygon_region(&hull));
    }
    let all_disks = particles
        .iter()
        .all(|p| matches!(p, ShapePrimitive::Disk { .. }));
    if all_disks {
        let radius = match &particles[0] {
            ShapePrimitive::Disk { radius, .. } => *radius,
            _ => unreachable!(),
        };
        let mut centers = Vec::new();
        for p in particles {
            match p {
                ShapePrimitive::Disk { center, radius: r } => {
                    if (r - radius).abs() > COORD_EPS * radius.max(1.0) {
                        return Err(UnsupportedGeometry::new(
                            "convex envelope of unequal-radius disks",
                        )
                        .into());
                    }
                    centers.push(*center);
                }
                _ => unreachable!(),
            }
        }
        return dilated_hull(&centers, radius);
    }
    Err(UnsupportedGeometry::new("convex envelope of mixed disk/polygon particles").into())
}

/// Andrew's monotone chain; returns CCW hull without collinear repeats.
pub fn convex_hull_points(pts: &[Point]) -> Vec<Point> {
    let mut p: Vec<Point> = pts.to_vec();
    p.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    p.dedup_by(|a, b| a.dist(*b) < 1e-15);
    if p.len() <= 2 {
        return p;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 {
            let a = lower[lower.len() - 2];
            let b = lower[lower.len() - 1];
            if b.sub(a).cross(q.sub(a)) <= 1e-14 {
                lower.pop();
            } else {
                break;
            }
        }
        lower.push(q);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 {
            let a = upper[upper.len() - 2];
            let b = upper[upper.len() - 1];
            if b.sub(a).cross(q.sub(a)) <= 1e-14 {
                upper.pop();
            } else {
                break;
            }
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Minkowski sum of a point hull with a disk of the common radius:
/// offset hull edges joined by CCW vertex arcs.
fn dilated_hull(centers: &[Point], radius: f64) -> Result<ArcRegion> {
    let hull = convex_hull_points(centers);
    match hull.len() {
        0 => Err(Error::Unsupported(UnsupportedGeometry::new("no disk centers"))),
        1 => Ok(super::primitive::disk_region(hull[0], radius)),
        2 => Ok(stadium(hull[0], hull[1], radius)),
        _ => {
            let n = hull.len();
            let mut edges: Vec<ArcEdge> = Vec::with_capacity(2 * n);
            for i in 0..n {
                let a = hull[i];
                let b = hull[(i + 1) % n];
                let c = hull[(i + 2) % n];
                let n_ab = b.sub(a).unit().perp().scale(-radius); // outward (right of CCW travel is outward? no)
                // For a CCW polygon the outward normal is the edge direction
                // rotated by -90 degrees.
                let start = a.add(n_ab);
                let end = b.add(n_ab);
                edges.push(ArcEdge::segment(start, end));
                let n_bc = c.sub(b).unit().perp().scale(-radius);
                edges.push(ArcEdge::arc(end, b.add(n_bc), b, Orientation::Ccw));
            }
            let region = ArcRegion::new(vec![ArcPath::new(edges)]);
            region.validate()?;
            Ok(region)
        }
    }
}

/// Hull of two equal disks: two tangent segments and two half-circle arcs.
fn stadium(a: Point, b: Point, radius: f64) -> ArcRegion {
    let d = b.sub(a).unit();
    let n = d.perp().scale(radius);
    let edges = vec![
        ArcEdge::segment(a.sub(n), b.sub(n)),
        ArcEdge::arc(b.sub(n), b.add(n), b, Orientation::Ccw),
        ArcEdge::segment(b.add(n), a.add(n)),
        ArcEdge::arc(a.add(n), a.sub(n), a, Orientation::Ccw),
    ];
    ArcRegion::new(vec![ArcPath::new(edges)])
}

/// Checks that a single-loop region is convex: CCW traversal, all vertex
/// turns left, every arc CCW. Used by tests and the envelope invariants.
pub fn is_convex_region(region: &ArcRegion) -> bool {
    if region.loops.len() != 1 {
        return false;
    }
    let path = &region.loops[0];
    if path.signed_area() <= 0.0 {
        return false;
    }
    let n = path.edges.len();
    for i in 0..n {
        let e = &path.edges[i];
        if let ArcEdge::Arc(a) = e {
            if a.orientation != Orientation::Ccw {
                return false;
            }
        }
        // Turn at the joint between e and the next edge.
        let out_dir = e.point_at(1.0).sub(e.point_at(1.0 - 1e-7));
        let next = &path.edges[(i + 1) % n];
        let in_dir = next.point_at(1e-7).sub(next.point_at(0.0));
        if out_dir.cross(in_dir) < -1e-9 * out_dir.norm() * in_dir.norm() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn single_disk_envelope_is_disk() {
        let d = ShapePrimitive::disk(Point::new(1.0, 2.0), 0.7);
        let env = convex_envelope(std::slice::from_ref(&d)).unwrap();
        assert!((env.area() - PI * 0.49).abs() < 1e-12);
        assert!(is_convex_region(&env));
    }

    #[test]
    fn two_disks_make_stadium() {
        let delta = 0.3;
        let d = 2.0;
        let parts = vec![
            ShapePrimitive::disk(Point::ORIGIN, delta),
            ShapePrimitive::disk(Point::new(d, 0.0), delta),
        ];
        let env = convex_envelope(&parts).unwrap();
        assert!((env.perimeter() - (2.0 * d + 2.0 * PI * delta)).abs() < 1e-12);
        assert!((env.area() - (2.0 * d * delta + PI * delta * delta)).abs() < 1e-12);
        assert!(is_convex_region(&env));
    }

    #[test]
    fn two_squares_hull_is_rectangle() {
        let d = 3.0;
        let parts = vec![
            ShapePrimitive::square(Point::ORIGIN, 1.0),
            ShapePrimitive::square(Point::new(d, 0.0), 1.0),
        ];
        let env = convex_envelope(&parts).unwrap();
        assert!((env.perimeter() - (2.0 * d + 4.0)).abs() < 1e-12);
        assert!((env.area() - (d + 1.0)).abs() < 1e-12);
        assert!(is_convex_region(&env));
    }

    #[test]
    fn mixed_families_rejected() {
        let parts = vec![
            ShapePrimitive::square(Point::ORIGIN, 1.0),
            ShapePrimitive::disk(Point::new(3.0, 0.0), 0.5),
        ];
        assert!(matches!(
            convex_envelope(&parts),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn three_disk_hull_perimeter() {
        let delta = 0.25;
        let parts = vec![
            ShapePrimitive::disk(Point::ORIGIN, delta),
            ShapePrimitive::disk(Point::new(4.0, 0.0), delta),
            ShapePrimitive::disk(Point::new(0.0, 3.0), delta),
        ];
        let env = convex_envelope(&parts).unwrap();
        // Hull polygon perimeter 3+4+5 plus a full turn of arcs.
        assert!((env.perimeter() - (12.0 + 2.0 * PI * delta)).abs() < 1e-12);
        assert!(is_convex_region(&env));
    }
}
