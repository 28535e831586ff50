use std::f64::consts::{PI, TAU};

use super::{Bbox, Point, COORD_EPS};
use crate::error::GeomError;

/// Traversal direction of a circular arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Ccw,
    Cw,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Ccw => 1.0,
            Orientation::Cw => -1.0,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
        }
    }
}

/// A circular arc from `start` to `end` around `center`, swept in the given
/// direction by an angle in (0, 2pi). Full circles are represented as two
/// half arcs.
#[derive(Clone, Copy, Debug)]
pub struct CircularArc {
    pub start: Point,
    pub end: Point,
    pub center: Point,
    pub radius: f64,
    pub orientation: Orientation,
}

impl CircularArc {
    pub fn start_angle(&self) -> f64 {
        self.start.sub(self.center).angle()
    }

    pub fn end_angle(&self) -> f64 {
        self.end.sub(self.center).angle()
    }

    /// Swept angle, in (0, 2pi]. Coincident endpoints read as a full turn,
    /// which validation rejects; constructors never produce them.
    pub fn sweep(&self) -> f64 {
        let a0 = self.start_angle();
        let a1 = self.end_angle();
        let d = match self.orientation {
            Orientation::Ccw => (a1 - a0).rem_euclid(TAU),
            Orientation::Cw => (a0 - a1).rem_euclid(TAU),
        };
        if d < 1e-14 {
            TAU
        } else {
            d
        }
    }

    pub fn length(&self) -> f64 {
        self.radius * self.sweep()
    }

    /// Angle of the point at fraction `t` of the sweep.
    fn angle_at(&self, t: f64) -> f64 {
        self.start_angle() + self.orientation.sign() * self.sweep() * t
    }

    pub fn point_at(&self, t: f64) -> Point {
        if t <= 0.0 {
            return self.start;
        }
        if t >= 1.0 {
            return self.end;
        }
        let a = self.angle_at(t);
        Point::new(
            self.center.x + self.radius * a.cos(),
            self.center.y + self.radius * a.sin(),
        )
    }

    /// Whether the circle angle `phi` falls inside the swept interval.
    pub fn contains_angle(&self, phi: f64) -> bool {
        let a0 = match self.orientation {
            Orientation::Ccw => self.start_angle(),
            Orientation::Cw => self.end_angle(),
        };
        let sweep = self.sweep();
        (phi - a0).rem_euclid(TAU) <= sweep
    }

    pub fn reversed(&self) -> CircularArc {
        CircularArc {
            start: self.end,
            end: self.start,
            center: self.center,
            radius: self.radius,
            orientation: self.orientation.reversed(),
        }
    }
}

/// One boundary edge: a straight segment or a circular arc.
#[derive(Clone, Copy, Debug)]
pub enum ArcEdge {
    Segment { start: Point, end: Point },
    Arc(CircularArc),
}

impl ArcEdge {
    pub fn segment(start: Point, end: Point) -> Self {
        ArcEdge::Segment { start, end }
    }

    pub fn arc(start: Point, end: Point, center: Point, orientation: Orientation) -> Self {
        let radius = 0.5 * (start.dist(center) + end.dist(center));
        ArcEdge::Arc(CircularArc {
            start,
            end,
            center,
            radius,
            orientation,
        })
    }

    pub fn start(&self) -> Point {
        match self {
            ArcEdge::Segment { start, .. } => *start,
            ArcEdge::Arc(a) => a.start,
        }
    }

    pub fn end(&self) -> Point {
        match self {
            ArcEdge::Segment { end, .. } => *end,
            ArcEdge::Arc(a) => a.end,
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            ArcEdge::Segment { start, end } => start.dist(*end),
            ArcEdge::Arc(a) => a.length(),
        }
    }

    /// Contribution to twice the signed area of the enclosing loop:
    /// the chord cross product plus, for arcs, twice the circular-segment
    /// area signed by orientation.
    pub fn double_area(&self) -> f64 {
        match self {
            ArcEdge::Segment { start, end } => start.cross(*end),
            ArcEdge::Arc(a) => {
                let theta = a.sweep();
                let segment = a.radius * a.radius * (theta - theta.sin());
                a.start.cross(a.end) + a.orientation.sign() * segment
            }
        }
    }

    pub fn point_at(&self, t: f64) -> Point {
        match self {
            ArcEdge::Segment { start, end } => start.add(end.sub(*start).scale(t)),
            ArcEdge::Arc(a) => a.point_at(t),
        }
    }

    pub fn bbox(&self) -> Bbox {
        let mut b = Bbox::empty();
        b.include(self.start());
        b.include(self.end());
        if let ArcEdge::Arc(a) = self {
            for (k, ext) in [
                (0.0, Point::new(a.radius, 0.0)),
                (0.5 * PI, Point::new(0.0, a.radius)),
                (PI, Point::new(-a.radius, 0.0)),
                (1.5 * PI, Point::new(0.0, -a.radius)),
            ] {
                if a.contains_angle(k) {
                    b.include(a.center.add(ext));
                }
            }
        }
        b
    }

    pub fn reversed(&self) -> ArcEdge {
        match self {
            ArcEdge::Segment { start, end } => ArcEdge::Segment {
                start: *end,
                end: *start,
            },
            ArcEdge::Arc(a) => ArcEdge::Arc(a.reversed()),
        }
    }

    pub fn translated(&self, v: Point) -> ArcEdge {
        match self {
            ArcEdge::Segment { start, end } => ArcEdge::Segment {
                start: start.add(v),
                end: end.add(v),
            },
            ArcEdge::Arc(a) => ArcEdge::Arc(CircularArc {
                start: a.start.add(v),
                end: a.end.add(v),
                center: a.center.add(v),
                ..*a
            }),
        }
    }

    pub fn scaled(&self, factor: f64) -> ArcEdge {
        match self {
            ArcEdge::Segment { start, end } => ArcEdge::Segment {
                start: start.scale(factor),
                end: end.scale(factor),
            },
            ArcEdge::Arc(a) => ArcEdge::Arc(CircularArc {
                start: a.start.scale(factor),
                end: a.end.scale(factor),
                center: a.center.scale(factor),
                radius: a.radius * factor,
                orientation: a.orientation,
            }),
        }
    }

    pub fn validate(&self, index: usize) -> Result<(), GeomError> {
        self.start().check_finite()?;
        self.end().check_finite()?;
        match self {
            ArcEdge::Segment { .. } => Ok(()),
            ArcEdge::Arc(a) => {
                if !(a.radius > 0.0) || !a.radius.is_finite() {
                    return Err(GeomError::BadRadius { radius: a.radius });
                }
                let scale = a.radius.max(1.0);
                for p in [a.start, a.end] {
                    let dev = (p.dist(a.center) - a.radius).abs();
                    if dev > COORD_EPS * scale {
                        return Err(GeomError::OffCircle { edge: index, dev });
                    }
                }
                let sweep = self_sweep_checked(a)?;
                debug_assert!(sweep > 0.0);
                Ok(())
            }
        }
    }

    /// Splits the edge at interior points where the tangent is horizontal,
    /// yielding pieces monotone in y. Straight segments are already
    /// monotone. Used by the crossing-number containment test.
    pub fn y_monotone_pieces(&self, out: &mut Vec<MonotonePiece>) {
        match self {
            ArcEdge::Segment { start, end } => out.push(MonotonePiece {
                start: *start,
                end: *end,
                arc_branch: None,
            }),
            ArcEdge::Arc(a) => {
                // Horizontal tangents at angles +-pi/2.
                let mut cuts: Vec<f64> = Vec::with_capacity(4);
                cuts.push(0.0);
                let sweep = a.sweep();
                let a0 = a.start_angle();
                for target in [0.5 * PI, 1.5 * PI] {
                    let rel = match a.orientation {
                        Orientation::Ccw => (target - a0).rem_euclid(TAU),
                        Orientation::Cw => (a0 - target).rem_euclid(TAU),
                    };
                    if rel > 1e-12 && rel < sweep - 1e-12 {
                        cuts.push(rel / sweep);
                    }
                }
                cuts.push(1.0);
                cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
                for w in cuts.windows(2) {
                    let (t0, t1) = (w[0], w[1]);
                    let mid = a.angle_at(0.5 * (t0 + t1));
                    out.push(MonotonePiece {
                        start: a.point_at(t0),
                        end: a.point_at(t1),
                        arc_branch: Some(ArcBranch {
                            center: a.center,
                            radius: a.radius,
                            right_half: mid.cos() >= 0.0,
                        }),
                    });
                }
            }
        }
    }
}

fn self_sweep_checked(a: &CircularArc) -> Result<f64, GeomError> {
    let sweep = a.sweep();
    if !(sweep > 0.0) || sweep >= TAU - 1e-12 {
        return Err(GeomError::BadSweep { sweep });
    }
    Ok(sweep)
}

/// A y-monotone fragment of an edge, used for ray-crossing tests.
pub struct MonotonePiece {
    pub start: Point,
    pub end: Point,
    pub arc_branch: Option<ArcBranch>,
}

pub struct ArcBranch {
    pub center: Point,
    pub radius: f64,
    pub right_half: bool,
}

impl MonotonePiece {
    /// Whether a rightward horizontal ray from `p` crosses this piece,
    /// using the half-open rule so shared endpoints count once.
    pub fn ray_crosses(&self, p: Point) -> bool {
        let (a, b) = (self.start, self.end);
        if (a.y > p.y) == (b.y > p.y) {
            return false;
        }
        let x = match &self.arc_branch {
            None => {
                let t = (p.y - a.y) / (b.y - a.y);
                a.x + t * (b.x - a.x)
            }
            Some(br) => {
                let dy = p.y - br.center.y;
                let disc = (br.radius * br.radius - dy * dy).max(0.0);
                let off = disc.sqrt();
                if br.right_half {
                    br.center.x + off
                } else {
                    br.center.x - off
                }
            }
        };
        x > p.x
    }
}

/// Intersection tests between edges, used by the simplicity check. Contacts
/// within `tol` of a shared endpoint do not count.
pub fn edges_intersect(e1: &ArcEdge, e2: &ArcEdge, tol: f64) -> bool {
    if !e1.bbox().expanded(tol).intersects(&e2.bbox()) {
        return false;
    }
    let pts = intersection_points(e1, e2, tol);
    for p in pts {
        let near_joint = [e1.start(), e1.end()]
            .iter()
            .any(|q| q.dist(p) <= tol * 10.0)
            && [e2.start(), e2.end()].iter().any(|q| q.dist(p) <= tol * 10.0);
        if !near_joint {
            return true;
        }
    }
    false
}

fn intersection_points(e1: &ArcEdge, e2: &ArcEdge, tol: f64) -> Vec<Point> {
    match (e1, e2) {
        (ArcEdge::Segment { start: a, end: b }, ArcEdge::Segment { start: c, end: d }) => {
            seg_seg(*a, *b, *c, *d, tol)
        }
        (ArcEdge::Segment { start: a, end: b }, ArcEdge::Arc(arc)) => seg_arc(*a, *b, arc, tol),
        (ArcEdge::Arc(arc), ArcEdge::Segment { start: a, end: b }) => seg_arc(*a, *b, arc, tol),
        (ArcEdge::Arc(a1), ArcEdge::Arc(a2)) => arc_arc(a1, a2, tol),
    }
}

fn seg_seg(a: Point, b: Point, c: Point, d: Point, tol: f64) -> Vec<Point> {
    let r = b.sub(a);
    let s = d.sub(c);
    let denom = r.cross(s);
    if denom.abs() < 1e-14 * (r.norm() * s.norm()).max(1e-30) {
        // Parallel; overlapping collinear segments are caught by midpoint
        // proximity.
        let mid = a.add(b).scale(0.5);
        let t = mid.sub(c).dot(s) / s.dot(s);
        if (0.0..=1.0).contains(&t) {
            let q = c.add(s.scale(t));
            if q.dist(mid) <= tol {
                return vec![mid];
            }
        }
        return vec![];
    }
    let t = c.sub(a).cross(s) / denom;
    let u = c.sub(a).cross(r) / denom;
    let lt = tol / r.norm().max(1e-30);
    let lu = tol / s.norm().max(1e-30);
    if t >= -lt && t <= 1.0 + lt && u >= -lu && u <= 1.0 + lu {
        vec![a.add(r.scale(t))]
    } else {
        vec![]
    }
}

fn seg_arc(a: Point, b: Point, arc: &CircularArc, tol: f64) -> Vec<Point> {
    let d = b.sub(a);
    let f = a.sub(arc.center);
    let qa = d.dot(d);
    let qb = 2.0 * f.dot(d);
    let qc = f.dot(f) - arc.radius * arc.radius;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return vec![];
    }
    let sq = disc.sqrt();
    let mut out = Vec::new();
    for t in [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)] {
        let lt = tol / d.norm().max(1e-30);
        if t >= -lt && t <= 1.0 + lt {
            let p = a.add(d.scale(t));
            if arc.contains_angle(p.sub(arc.center).angle()) {
                out.push(p);
            }
        }
    }
    out
}

fn arc_arc(a1: &CircularArc, a2: &CircularArc, _tol: f64) -> Vec<Point> {
    let d = a2.center.sub(a1.center);
    let dist = d.norm();
    let (r1, r2) = (a1.radius, a2.radius);
    if dist < 1e-14 {
        return vec![]; // concentric: either disjoint or same circle
    }
    if dist > r1 + r2 || dist < (r1 - r2).abs() {
        return vec![];
    }
    let x = (dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist);
    let h2 = r1 * r1 - x * x;
    let h = h2.max(0.0).sqrt();
    let base = a1.center.add(d.unit().scale(x));
    let off = d.unit().perp().scale(h);
    let mut out = Vec::new();
    for p in [base.add(off), base.sub(off)] {
        if a1.contains_angle(p.sub(a1.center).angle()) && a2.contains_angle(p.sub(a2.center).angle())
        {
            out.push(p);
        }
        if h < 1e-14 {
            break; // tangent contact: one point
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn quarter_arc_sweep_and_length() {
        let arc = CircularArc {
            start: Point::new(1.0, 0.0),
            end: Point::new(0.0, 1.0),
            center: Point::ORIGIN,
            radius: 1.0,
            orientation: Orientation::Ccw,
        };
        assert!((arc.sweep() - FRAC_PI_2).abs() < 1e-15);
        assert!((arc.length() - FRAC_PI_2).abs() < 1e-15);
        let rev = arc.reversed();
        assert!((rev.sweep() - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn arc_area_contribution_matches_quarter_disk() {
        // CCW quarter circle plus the two radii closes a quarter disk.
        let arc = ArcEdge::arc(
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
            Point::ORIGIN,
            Orientation::Ccw,
        );
        let e1 = ArcEdge::segment(Point::ORIGIN, Point::new(1.0, 0.0));
        let e2 = ArcEdge::segment(Point::new(0.0, 1.0), Point::ORIGIN);
        let double = arc.double_area() + e1.double_area() + e2.double_area();
        assert!((double / 2.0 - std::f64::consts::PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn monotone_split_covers_arc() {
        let arc = ArcEdge::arc(
            Point::new(1.0, 0.0),
            Point::new(-1.0, 0.0),
            Point::ORIGIN,
            Orientation::Ccw,
        );
        let mut pieces = Vec::new();
        arc.y_monotone_pieces(&mut pieces);
        assert_eq!(pieces.len(), 2);
        // Ray from the center should cross the upper half circle exactly once.
        let crossings = pieces
            .iter()
            .filter(|p| p.ray_crosses(Point::new(0.0, 0.5)))
            .count();
        assert_eq!(crossings, 1);
    }

    #[test]
    fn seg_arc_intersections() {
        let arc = CircularArc {
            start: Point::new(1.0, 0.0),
            end: Point::new(-1.0, 0.0),
            center: Point::ORIGIN,
            radius: 1.0,
            orientation: Orientation::Ccw,
        };
        let hits = seg_arc(Point::new(-2.0, 0.5), Point::new(2.0, 0.5), &arc, 1e-9);
        assert_eq!(hits.len(), 2);
        let hits = seg_arc(Point::new(-2.0, -0.5), Point::new(2.0, -0.5), &arc, 1e-9);
        assert_eq!(hits.len(), 0);
    }
}
