//! Morphological erosion, dilation, opening and closing with disk
//! structuring elements, on the shape families the solver needs.
//!
//! Openings of convex bodies are computed exactly: erode by half-plane
//! clipping, then dilate back, which fillets every surviving corner with a
//! radius-r arc. Closings of particle sets are built by direct tangent-arc
//! construction (see [`closing`]).

mod closing;

pub use closing::{close_r, Bridge, BridgeKind, Closing};
pub(crate) use closing::close_r_selected;

use crate::error::{Error, Result};
use crate::geom::{ArcEdge, ArcPath, ArcRegion, Orientation, Point, ShapePrimitive};

/// Result of an inward or outward disk offset.
#[derive(Clone, Debug)]
pub struct OffsetResult {
    pub region: ArcRegion,
    pub radius: f64,
    pub inward: bool,
}

/// An opened convex body: the region, the indices of the fillet arcs the
/// opening introduced (all on loop 0), and the eroded core whose vertices
/// are the fillet centers.
#[derive(Clone, Debug)]
pub struct OpenedConvex {
    pub region: ArcRegion,
    pub fillets: Vec<usize>,
    pub core: ShapePrimitive,
}

/// A convex core dilated by a rounding radius. Openings of convex bodies
/// live in this family, and erosion/dilation act on it in closed form,
/// which is what makes idempotence and monotonicity checks exact.
#[derive(Clone, Debug)]
pub struct RoundedConvex {
    pub core: ShapePrimitive,
    pub rounding: f64,
}

impl RoundedConvex {
    pub fn region(&self) -> ArcRegion {
        dilate(&self.core, self.rounding).region
    }

    pub fn erode(&self, r: f64) -> Option<RoundedConvex> {
        if r <= self.rounding {
            Some(RoundedConvex {
                core: self.core.clone(),
                rounding: self.rounding - r,
            })
        } else {
            erode_convex(&self.core, r - self.rounding).map(|core| RoundedConvex {
                core,
                rounding: 0.0,
            })
        }
    }

    pub fn dilate(&self, r: f64) -> RoundedConvex {
        RoundedConvex {
            core: self.core.clone(),
            rounding: self.rounding + r,
        }
    }

    pub fn open(&self, r: f64) -> Option<RoundedConvex> {
        self.erode(r).map(|e| e.dilate(r))
    }

    /// Sampled containment: boundary samples of `self` all inside `other`.
    pub fn contained_in(&self, other: &RoundedConvex, samples: usize) -> bool {
        let mine = self.region();
        let theirs = other.region();
        for l in &mine.loops {
            for e in &l.edges {
                for k in 0..samples {
                    let t = (k as f64 + 0.5) / samples as f64;
                    let p = e.point_at(t);
                    // Nudge inward so boundary tangencies pass.
                    let inward = {
                        let c = mine.bbox();
                        Point::new(
                            0.5 * (c.min.x + c.max.x) - p.x,
                            0.5 * (c.min.y + c.max.y) - p.y,
                        )
                        .unit()
                        .scale(1e-9)
                    };
                    if !theirs.contains(p.add(inward)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Largest radius of a disk contained in the shape.
pub fn inradius(shape: &ShapePrimitive) -> f64 {
    match shape {
        ShapePrimitive::Disk { radius, .. } => *radius,
        ShapePrimitive::Rect { width, height, .. } => 0.5 * width.min(*height),
        ShapePrimitive::Polygon { .. } => {
            // Bisection on erosion emptiness; only used for brackets.
            let bbox = shape.to_region().bbox();
            let mut lo = 0.0;
            let mut hi = 0.5 * bbox.width().max(bbox.height());
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if erode_convex(shape, mid).is_some() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        }
    }
}

/// Inner parallel body `{x : B_r(x) subset shape}` of a convex shape.
/// Returns `None` when the erosion is empty (r at or past the inradius);
/// an empty erosion is a valid outcome, not an error.
pub fn erode_convex(shape: &ShapePrimitive, r: f64) -> Option<ShapePrimitive> {
    assert!(r >= 0.0, "erosion radius must be nonnegative");
    if r == 0.0 {
        return Some(shape.clone());
    }
    match shape {
        ShapePrimitive::Disk { center, radius } => {
            let rr = radius - r;
            (rr > 0.0).then(|| ShapePrimitive::disk(*center, rr))
        }
        ShapePrimitive::Rect {
            center,
            width,
            height,
        } => {
            let (w, h) = (width - 2.0 * r, height - 2.0 * r);
            (w > 0.0 && h > 0.0).then(|| ShapePrimitive::rect(*center, w, h))
        }
        ShapePrimitive::Polygon { vertices } => {
            let mut poly: Vec<Point> = vertices.clone();
            let n = vertices.len();
            for i in 0..n {
                let a = vertices[i];
                let b = vertices[(i + 1) % n];
                let inward = b.sub(a).unit().perp(); // interior is left of CCW edges
                let anchor = a.add(inward.scale(r));
                poly = clip_halfplane(&poly, anchor, inward);
                if poly.len() < 3 {
                    return None;
                }
            }
            dedup_near(&mut poly);
            if poly.len() < 3 || crate::geom::primitive_polygon_area(&poly) <= 1e-18 {
                return None;
            }
            Some(ShapePrimitive::polygon(poly))
        }
    }
}

/// Minkowski sum with a disk of radius r: edges offset outward, vertices
/// replaced by CCW arcs. For convex shapes the area identity
/// `|X| + r Per(X) + pi r^2` holds exactly.
pub fn dilate(shape: &ShapePrimitive, r: f64) -> OffsetResult {
    let (region, _) = dilate_with_fillets(shape, r);
    OffsetResult {
        region,
        radius: r,
        inward: false,
    }
}

fn dilate_with_fillets(shape: &ShapePrimitive, r: f64) -> (ArcRegion, Vec<usize>) {
    if r == 0.0 {
        return (shape.to_region(), Vec::new());
    }
    match shape {
        ShapePrimitive::Disk { center, radius } => (
            ShapePrimitive::disk(*center, radius + r).to_region(),
            Vec::new(),
        ),
        _ => {
            let v = shape.corners().expect("polygonal shape");
            let n = v.len();
            let mut edges = Vec::with_capacity(2 * n);
            let mut fillets = Vec::with_capacity(n);
            for i in 0..n {
                let a = v[i];
                let b = v[(i + 1) % n];
                let c = v[(i + 2) % n];
                // Outward normal of a CCW edge is the direction rotated -90.
                let out_ab = b.sub(a).unit().perp().scale(-r);
                let out_bc = c.sub(b).unit().perp().scale(-r);
                edges.push(ArcEdge::segment(a.add(out_ab), b.add(out_ab)));
                fillets.push(edges.len());
                edges.push(ArcEdge::arc(
                    b.add(out_ab),
                    b.add(out_bc),
                    b,
                    Orientation::Ccw,
                ));
            }
            (ArcRegion::new(vec![ArcPath::new(edges)]), fillets)
        }
    }
}

/// Opening of a convex domain: union of all radius-r disks inside it.
/// Exactly erode-then-dilate; convex polygon corners come back filleted.
/// Fails with [`Error::EmptyOpening`] when r reaches the inradius.
pub fn open_convex(domain: &ShapePrimitive, r: f64) -> Result<OpenedConvex> {
    assert!(r >= 0.0);
    if r == 0.0 {
        return Ok(OpenedConvex {
            region: domain.to_region(),
            fillets: Vec::new(),
            core: domain.clone(),
        });
    }
    match erode_convex(domain, r) {
        None => Err(Error::EmptyOpening {
            radius: r,
            inradius: inradius(domain),
        }),
        Some(core) => {
            let (region, fillets) = dilate_with_fillets(&core, r);
            Ok(OpenedConvex {
                region,
                fillets,
                core,
            })
        }
    }
}

fn clip_halfplane(poly: &[Point], anchor: Point, inward: Point) -> Vec<Point> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    let n = poly.len();
    let side = |p: Point| inward.dot(p.sub(anchor));
    for i in 0..n {
        let cur = poly[i];
        let nxt = poly[(i + 1) % n];
        let (sc, sn) = (side(cur), side(nxt));
        if sc >= 0.0 {
            out.push(cur);
        }
        if (sc >= 0.0) != (sn >= 0.0) {
            let t = sc / (sc - sn);
            out.push(cur.add(nxt.sub(cur).scale(t)));
        }
    }
    out
}

fn dedup_near(poly: &mut Vec<Point>) {
    poly.dedup_by(|a, b| a.dist(*b) < 1e-12);
    if poly.len() > 1 && poly[0].dist(*poly.last().unwrap()) < 1e-12 {
        poly.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn erode_square_is_smaller_square() {
        let sq = ShapePrimitive::square(Point::ORIGIN, 3.0);
        let e = erode_convex(&sq, 0.5).unwrap();
        assert!((e.area() - 4.0).abs() < 1e-14);
        assert!(erode_convex(&sq, 1.5).is_none()); // r = inradius: empty
    }

    #[test]
    fn erode_polygon_matches_rect() {
        let sq = ShapePrimitive::polygon(vec![
            Point::new(-1.5, -1.5),
            Point::new(1.5, -1.5),
            Point::new(1.5, 1.5),
            Point::new(-1.5, 1.5),
        ]);
        let e = erode_convex(&sq, 0.5).unwrap();
        assert!((e.area() - 4.0).abs() < 1e-12);
        let disk = ShapePrimitive::disk(Point::new(2.0, 0.0), 1.0);
        let ed = erode_convex(&disk, 0.25).unwrap();
        assert!((ed.area() - PI * 0.5625).abs() < 1e-12);
    }

    #[test]
    fn erode_triangle_vanishing_vertex() {
        // Thin triangle: the sharp vertex recedes fast but the erosion
        // stays a triangle until it vanishes entirely.
        let tri = ShapePrimitive::polygon(vec![
            Point::new(0.0, 0.0),
            Point::new(10.0, 0.0),
            Point::new(0.0, 1.0),
        ]);
        let e = erode_convex(&tri, 0.2).expect("non-empty");
        match &e {
            ShapePrimitive::Polygon { vertices } => assert_eq!(vertices.len(), 3),
            _ => panic!("expected polygon"),
        }
        assert!(erode_convex(&tri, 0.5).is_none());
    }

    #[test]
    fn dilate_area_identity() {
        let sq = ShapePrimitive::square(Point::new(0.3, -0.2), 1.0);
        let r = 0.37;
        let d = dilate(&sq, r);
        let expect = sq.area() + r * sq.perimeter() + PI * r * r;
        assert!((d.region.area() - expect).abs() < 1e-12);
        assert!((d.region.perimeter() - (4.0 + 2.0 * PI * r)).abs() < 1e-12);

        let disk = ShapePrimitive::disk(Point::ORIGIN, 0.8);
        let dd = dilate(&disk, r);
        assert!((dd.region.area() - PI * (0.8 + r) * (0.8 + r)).abs() < 1e-12);

        // A point (tiny rect) dilates to nearly a disk.
        let pt = ShapePrimitive::rect(Point::ORIGIN, 1e-12, 1e-12);
        let dp = dilate(&pt, 1.0);
        assert!((dp.region.area() - PI).abs() < 1e-9);
    }

    #[test]
    fn open_square_formulas() {
        let l = 3.33;
        let r = 0.6;
        let sq = ShapePrimitive::square(Point::ORIGIN, l);
        let o = open_convex(&sq, r).unwrap();
        let area = l * l + r * r * (PI - 4.0);
        let per = 4.0 * l + r * (2.0 * PI - 8.0);
        assert!((o.region.area() - area).abs() < 1e-12);
        assert!((o.region.perimeter() - per).abs() < 1e-12);
        assert_eq!(o.fillets.len(), 4);

        // Disk is open-invariant.
        let disk = ShapePrimitive::disk(Point::ORIGIN, 2.0);
        let od = open_convex(&disk, 1.0).unwrap();
        assert!((od.region.area() - 4.0 * PI).abs() < 1e-12);
        assert!(od.fillets.is_empty());

        // r = 0 is the identity.
        let o0 = open_convex(&sq, 0.0).unwrap();
        assert!((o0.region.area() - l * l).abs() < 1e-14);
    }

    #[test]
    fn open_past_inradius_errors() {
        let sq = ShapePrimitive::square(Point::ORIGIN, 2.0);
        assert!(matches!(
            open_convex(&sq, 1.0),
            Err(Error::EmptyOpening { .. })
        ));
    }

    #[test]
    fn opening_idempotent_in_rounded_family() {
        let sq = RoundedConvex {
            core: ShapePrimitive::square(Point::ORIGIN, 3.0),
            rounding: 0.0,
        };
        let r = 0.7;
        let once = sq.open(r).unwrap();
        let twice = once.open(r).unwrap();
        assert!((once.region().area() - twice.region().area()).abs() < 1e-13);
        assert!((once.region().perimeter() - twice.region().perimeter()).abs() < 1e-13);
        assert!((twice.rounding - r).abs() < 1e-15);
    }

    #[test]
    fn opening_monotone_in_radius() {
        let dom = RoundedConvex {
            core: ShapePrimitive::rect(Point::ORIGIN, 4.0, 2.0),
            rounding: 0.0,
        };
        let big = dom.open(0.8).unwrap();
        let small = dom.open(0.3).unwrap();
        assert!(big.region().area() <= small.region().area() + 1e-13);
        assert!(big.contained_in(&small, 8));
    }
}
