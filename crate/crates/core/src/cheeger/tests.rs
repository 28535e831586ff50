use super::*;
use crate::geom::Point;
use std::f64::consts::PI;

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(lo) * f(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn convex_square_closed_form() {
    for l in [1.0, 3.33, 12.0] {
        let sq = ShapePrimitive::square(Point::ORIGIN, l);
        let res = cheeger_convex(&sq).unwrap();
        let expect = l / (2.0 + PI.sqrt());
        assert!(
            (res.radius - expect).abs() <= 1e-9 * expect,
            "L={l}: r={} expect={expect}",
            res.radius
        );
        assert!((res.lambda * res.radius - 1.0).abs() < 1e-12);
        assert_eq!(res.free_arcs.len(), 4);
    }
}

#[test]
fn convex_disk_is_half_radius() {
    let d = ShapePrimitive::disk(Point::new(1.0, -2.0), 3.0);
    let res = cheeger_convex(&d).unwrap();
    assert!((res.radius - 1.5).abs() < 1e-9);
    assert!((res.lambda - 2.0 / 3.0).abs() < 1e-10);
    // The Cheeger set of a disk is the disk itself.
    assert!((res.set.area() - 9.0 * PI).abs() < 1e-9);
}

#[test]
fn convex_rectangle_matches_stated_equation() {
    // (2-2r)(1-2r) = pi r^2, solved independently here.
    let f = |r: f64| (2.0 - 2.0 * r) * (1.0 - 2.0 * r) - PI * r * r;
    let expect = bisect(1e-6, 0.5 - 1e-9, f);
    let rect = ShapePrimitive::rect(Point::ORIGIN, 2.0, 1.0);
    let res = cheeger_convex(&rect).unwrap();
    assert!(
        (res.radius - expect).abs() < 1e-9,
        "r={} expect={expect}",
        res.radius
    );
    // Known closed form for rectangles as a second route.
    let lam = (3.0 + (1.0 + 2.0 * PI).sqrt()) / 2.0;
    assert!((res.lambda - lam).abs() < 1e-9);
}

#[test]
fn scaling_law() {
    let sq = ShapePrimitive::square(Point::ORIGIN, 1.7);
    let base = cheeger_convex(&sq).unwrap();
    for alpha in [2.0, 5.5] {
        let scaled = cheeger_convex(&sq.scaled(alpha)).unwrap();
        assert!((scaled.lambda - base.lambda / alpha).abs() <= 1e-10 * base.lambda);
    }
}

#[test]
fn annular_disk_in_disk_is_whole_annulus() {
    let dom = ShapePrimitive::disk(Point::ORIGIN, 2.0);
    let part = ShapePrimitive::disk(Point::ORIGIN, 1.0 / PI.sqrt());
    let res = cheeger_annular(&dom, std::slice::from_ref(&part)).unwrap();
    let expect = (4.0 * PI + 2.0 * PI.sqrt()) / (4.0 * PI - 1.0);
    assert!(
        (res.lambda - expect).abs() < 1e-12 * expect,
        "lambda={} expect={expect}",
        res.lambda
    );
    assert!((res.set.area() - (4.0 * PI - 1.0)).abs() < 1e-10);
    assert!(res.free_arcs.is_empty());
    // Spot value from evaluating the printed formula at R=2.
    assert!((res.lambda - 1.392941559055).abs() < 1e-9);
}

#[test]
fn annular_square_in_square_reference() {
    // r solves r^2(pi-4) + 4r(L+1) - (L^2-1) = 0; solved here by bisection
    // as an independent route.
    let l = 3.33;
    let f = |r: f64| r * r * (PI - 4.0) + 4.0 * r * (l + 1.0) - (l * l - 1.0);
    let r_expect = bisect(1e-6, 1.0, f);
    let dom = ShapePrimitive::square(Point::ORIGIN, l);
    let part = ShapePrimitive::square(Point::ORIGIN, 1.0);
    let res = cheeger_annular(&dom, std::slice::from_ref(&part)).unwrap();
    assert_eq!(res.family, FamilyTag::OpenedDomain);
    assert!(
        (res.radius - r_expect).abs() < 1e-9,
        "r={} expect={r_expect}",
        res.radius
    );
    // The paper's rounded anchor.
    assert!((res.radius - 0.600).abs() < 5e-4);
    assert_eq!(res.free_arcs.len(), 4);
    let diag = validate_cheeger(&res);
    assert_eq!(diag.violations, 0);
    for arc in &diag.arcs {
        assert!((arc.sweep - PI / 2.0).abs() < 1e-9);
    }
}

#[test]
fn rectangle_coexistence_band() {
    let l = 3.0;
    let dom = ShapePrimitive::square(Point::ORIGIN, l);
    // beta = 0.4: wide flat rectangle; the slab configuration wins.
    let beta = 0.4_f64;
    let part = ShapePrimitive::rect(Point::ORIGIN, 1.0 / beta, beta);
    let res = cheeger_annular(&dom, std::slice::from_ref(&part)).unwrap();
    assert_eq!(res.family, FamilyTag::Slab, "family = {}", res.family);
    // Independent route: (4-pi) r^2 - (3L - beta) r + L(L-beta)/2 = 0.
    let f = |r: f64| (4.0 - PI) * r * r - (3.0 * l - beta) * r + 0.5 * l * (l - beta);
    let r2 = bisect(1e-6, 1.0, f);
    assert!(
        (res.radius - r2).abs() < 1e-9,
        "r={} expect={r2}",
        res.radius
    );
    // Symmetric ties: both slabs, merged and flagged maximal.
    assert!(res.maximal);
    assert_eq!(res.components, 2);

    // beta = 0.6: the opened-domain configuration wins.
    let beta = 0.6;
    let part = ShapePrimitive::rect(Point::ORIGIN, 1.0 / beta, beta);
    let res = cheeger_annular(&dom, std::slice::from_ref(&part)).unwrap();
    assert_eq!(res.family, FamilyTag::OpenedDomain);

    // beta = 1 must match the square-in-square quadratic to 1e-12.
    let part = ShapePrimitive::square(Point::ORIGIN, 1.0);
    let res1 = cheeger_annular(&dom, std::slice::from_ref(&part)).unwrap();
    let f = |r: f64| r * r * (PI - 4.0) + 4.0 * r * (l + 1.0) - (l * l - 1.0);
    let r_sq = bisect(1e-6, 1.0, f);
    assert!((res1.radius - r_sq).abs() < 1e-12);
}

#[test]
fn offset_square_near_wall_lowers_lambda() {
    let l = 3.33;
    let dom = ShapePrimitive::square(Point::ORIGIN, l);
    let centered = ShapePrimitive::square(Point::ORIGIN, 1.0);
    let lam_centered = cheeger_annular(&dom, std::slice::from_ref(&centered))
        .unwrap()
        .lambda;
    // Move the particle toward the right wall, gap 0.1. The optimum is an
    // opening of the annulus that avoids the gap; at this aspect ratio the
    // side corridors also pinch off, so the slab realization wins.
    let d = 0.1;
    let cx = l / 2.0 - d - 0.5;
    let part = ShapePrimitive::square(Point::new(cx, 0.0), 1.0);
    let res = cheeger_annular(&dom, std::slice::from_ref(&part)).unwrap();
    assert!(
        matches!(res.family, FamilyTag::Slab | FamilyTag::WallPinch),
        "family = {}",
        res.family
    );
    assert!(
        res.lambda < lam_centered,
        "pinched lambda {} vs centered {}",
        res.lambda,
        lam_centered
    );
    assert_eq!(validate_cheeger(&res).violations, 0);
}

#[test]
fn wide_particle_near_wall_takes_wraparound() {
    // A 2x1 particle near the right wall of a 5x5 square: the corridors
    // above and below stay wider than 2r, so the wrap-around opening (gap
    // column pinched off behind the particle) is the optimal family.
    let l = 5.0;
    let dom = ShapePrimitive::square(Point::ORIGIN, l);
    let d = 0.3;
    let part = ShapePrimitive::rect(Point::new(l / 2.0 - d - 1.0, 0.0), 2.0, 1.0);
    let res = cheeger_annular(&dom, std::slice::from_ref(&part)).unwrap();
    assert_eq!(res.family, FamilyTag::WallPinch, "family = {}", res.family);
    assert_eq!(validate_cheeger(&res).violations, 0);
    // Pinching beats keeping the gap.
    let centered = ShapePrimitive::rect(Point::ORIGIN, 2.0, 1.0);
    let lam_centered = cheeger_annular(&dom, std::slice::from_ref(&centered))
        .unwrap()
        .lambda;
    assert!(res.lambda < lam_centered);
}

#[test]
fn two_squares_in_disk_families() {
    let dom = ShapePrimitive::disk(Point::ORIGIN, 5.0);
    // Far apart: the whole annulus wins and lambda matches the closed form.
    let far = [
        ShapePrimitive::square(Point::new(-2.0, 0.0), 1.0),
        ShapePrimitive::square(Point::new(2.0, 0.0), 1.0),
    ];
    let res = cheeger_annular(&dom, &far).unwrap();
    let lam_a = (2.0 * PI * 5.0 + 8.0) / (PI * 25.0 - 2.0);
    assert!((res.lambda - lam_a).abs() < 1e-10);
    assert_ne!(res.family, FamilyTag::BridgedComplement);

    // Close together: the bridged complement takes over.
    let close = [
        ShapePrimitive::square(Point::new(-0.6, 0.0), 1.0),
        ShapePrimitive::square(Point::new(0.6, 0.0), 1.0),
    ];
    let res = cheeger_annular(&dom, &close).unwrap();
    assert_eq!(res.family, FamilyTag::BridgedComplement);
    assert!(res.lambda < lam_a);
    assert_eq!(validate_cheeger(&res).violations, 0);
}

#[test]
fn annular_beats_convex_constant() {
    // Removing area cannot decrease the constant of the annular problem.
    let dom = ShapePrimitive::square(Point::ORIGIN, 3.33);
    let part = ShapePrimitive::square(Point::ORIGIN, 1.0);
    let annular = cheeger_annular(&dom, std::slice::from_ref(&part)).unwrap();
    let convex = cheeger_convex(&dom).unwrap();
    assert!(annular.lambda >= convex.lambda - 1e-12);
}

#[test]
fn validate_flags_constructed_violation() {
    use crate::geom::{ArcEdge, ArcPath, ArcRegion, Orientation};
    // A 3/2 pi arc closed by segments: sweep limit violated.
    let arc = ArcEdge::arc(
        Point::new(1.0, 0.0),
        Point::new(0.0, -1.0),
        Point::ORIGIN,
        Orientation::Ccw,
    );
    let e1 = ArcEdge::segment(Point::new(0.0, -1.0), Point::ORIGIN);
    let e2 = ArcEdge::segment(Point::ORIGIN, Point::new(1.0, 0.0));
    let region = ArcRegion::new(vec![ArcPath::new(vec![arc, e1, e2])]);
    let lambda = region.perimeter() / region.area();
    let fake = CheegerResult {
        radius: 1.0 / lambda,
        lambda,
        set: region,
        family: FamilyTag::WholeAnnulus,
        maximal: false,
        free_arcs: vec![(0, 0)],
        components: 1,
    };
    let diag = validate_cheeger(&fake);
    assert!(diag.violations > 0);
    assert!(diag.arcs[0].sweep > PI);
}

#[test]
fn particles_must_be_inside_and_disjoint() {
    let dom = ShapePrimitive::square(Point::ORIGIN, 2.0);
    let outside = ShapePrimitive::disk(Point::new(5.0, 0.0), 0.1);
    assert!(cheeger_annular(&dom, &[outside]).is_err());
    let overlapping = [
        ShapePrimitive::disk(Point::new(0.0, 0.0), 0.3),
        ShapePrimitive::disk(Point::new(0.2, 0.0), 0.3),
    ];
    assert!(cheeger_annular(&dom, &overlapping).is_err());
}
