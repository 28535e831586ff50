//! Candidate-family generators for the annular Cheeger problem.
//!
//! Each family maps a trial radius r to a concrete admissible subset of
//! `domain \ particles` (or refuses, when the construction does not exist
//! at that radius). Free boundary pieces are tracked so the curvature
//! invariants can be checked on the winner.

use super::FamilyTag;
use crate::geom::{
    difference_annulus, ArcEdge, ArcPath, ArcRegion, CircularArc, Orientation, Point,
    ShapePrimitive,
};
use crate::morph;

#[derive(Clone)]
pub(super) struct Candidate {
    pub region: ArcRegion,
    pub free_arcs: Vec<(usize, usize)>,
    pub components: usize,
    /// Structural branch id; bisection brackets must not straddle a change.
    pub signature: u64,
}

pub(super) type Generator = Box<dyn Fn(f64) -> Option<Candidate> + Send + Sync>;

pub(super) enum Family {
    Direct {
        candidate: Candidate,
        tag: FamilyTag,
    },
    Parametric {
        generator: Generator,
        r_min: f64,
        r_max: f64,
        tag: FamilyTag,
    },
}

pub(super) fn enumerate_families(
    domain: &ShapePrimitive,
    particles: &[ShapePrimitive],
) -> Vec<Family> {
    let mut out = Vec::new();
    let inr = morph::inradius(domain);
    let r_min = 1e-7 * inr;
    let r_max = inr * (1.0 - 1e-9);

    // Whole annulus, always admissible.
    if let Ok(region) = difference_annulus(
        &domain.to_region(),
        &particles.iter().map(|p| p.to_region()).collect::<Vec<_>>(),
    ) {
        out.push(Family::Direct {
            candidate: Candidate {
                region,
                free_arcs: Vec::new(),
                components: 1,
                signature: 0,
            },
            tag: FamilyTag::WholeAnnulus,
        });
    }

    // Opened domain minus particles.
    {
        let domain = domain.clone();
        let particles = particles.to_vec();
        out.push(Family::Parametric {
            generator: Box::new(move |r| opened_domain_candidate(&domain, &particles, r)),
            r_min,
            r_max,
            tag: FamilyTag::OpenedDomain,
        });
    }

    // Wall-pinch and slab openings exist for a single rectangular particle
    // in a rectangular domain.
    if particles.len() == 1 {
        if let (
            ShapePrimitive::Rect { .. },
            ShapePrimitive::Rect { .. },
        ) = (domain, &particles[0])
        {
            for k in 0..4u8 {
                let dom = domain.clone();
                let part = particles[0].clone();
                out.push(Family::Parametric {
                    generator: Box::new(move |r| {
                        rotated(&dom, &part, k, r, wall_pinch_candidate)
                    }),
                    r_min,
                    r_max,
                    tag: FamilyTag::WallPinch,
                });
                let dom = domain.clone();
                let part = particles[0].clone();
                out.push(Family::Parametric {
                    generator: Box::new(move |r| rotated(&dom, &part, k, r, slab_candidate)),
                    r_min,
                    r_max,
                    tag: FamilyTag::Slab,
                });
            }
        }
    }

    // Complement of the bridged particle block, plus isolated cells.
    if particles.len() >= 2 {
        let dom = domain.clone();
        let parts = particles.to_vec();
        out.push(Family::Parametric {
            generator: Box::new(move |r| bridged_complement_candidate(&dom, &parts, r)),
            r_min,
            r_max,
            tag: FamilyTag::BridgedComplement,
        });
        let parts = particles.to_vec();
        out.push(Family::Parametric {
            generator: Box::new(move |r| interior_cells_candidate(&parts, r)),
            r_min,
            r_max,
            tag: FamilyTag::InteriorCell,
        });
    }

    out
}

/// Largest distance from an original domain corner at which opening
/// leftovers can lie. Exact for right angles; padded for general polygons
/// whose vertices may vanish under erosion.
fn corner_reaches(domain: &ShapePrimitive, r: f64) -> Vec<(Point, f64)> {
    match domain {
        ShapePrimitive::Disk { .. } => Vec::new(),
        ShapePrimitive::Rect { .. } => domain
            .corners()
            .unwrap()
            .into_iter()
            .map(|v| (v, r))
            .collect(),
        ShapePrimitive::Polygon { vertices } => {
            let n = vertices.len();
            (0..n)
                .map(|i| {
                    let prev = vertices[(i + n - 1) % n];
                    let v = vertices[i];
                    let next = vertices[(i + 1) % n];
                    let a1 = prev.sub(v).angle();
                    let a2 = next.sub(v).angle();
                    let interior = (a1 - a2).rem_euclid(std::f64::consts::TAU);
                    let reach = r / (0.5 * interior).tan();
                    (v, 2.0 * reach.max(r))
                })
                .collect()
        }
    }
}

fn opened_domain_candidate(
    domain: &ShapePrimitive,
    particles: &[ShapePrimitive],
    r: f64,
) -> Option<Candidate> {
    let opened = morph::open_convex(domain, r).ok()?;
    for (v, reach) in corner_reaches(domain, r) {
        for p in particles {
            if p.distance_to_point(v) < reach * (1.0 + 1e-9) {
                return None;
            }
        }
    }
    let mut loops = opened.region.loops;
    let free_arcs: Vec<_> = opened.fillets.iter().map(|&e| (0usize, e)).collect();
    for p in particles {
        for l in p.to_region().loops {
            loops.push(l.reversed());
        }
    }
    Some(Candidate {
        region: ArcRegion::new(loops),
        free_arcs,
        components: 1,
        signature: 1,
    })
}

// ---------------------------------------------------------------------------
// Rotation helper: pinch/slab constructions are written for one canonical
// wall and conjugated by exact quarter turns about the domain center.
// ---------------------------------------------------------------------------

struct RectFrame {
    cx: f64,
    cy: f64,
    w: f64,
    h: f64,
}

fn rect_frame(s: &ShapePrimitive) -> RectFrame {
    match s {
        ShapePrimitive::Rect {
            center,
            width,
            height,
        } => RectFrame {
            cx: center.x,
            cy: center.y,
            w: *width,
            h: *height,
        },
        _ => unreachable!("rect expected"),
    }
}

fn rot_point(p: Point, c: Point, k: u8) -> Point {
    let d = p.sub(c);
    let d = match k % 4 {
        0 => d,
        1 => Point::new(-d.y, d.x),
        2 => Point::new(-d.x, -d.y),
        _ => Point::new(d.y, -d.x),
    };
    c.add(d)
}

fn rot_edge(e: &ArcEdge, c: Point, k: u8) -> ArcEdge {
    match e {
        ArcEdge::Segment { start, end } => ArcEdge::Segment {
            start: rot_point(*start, c, k),
            end: rot_point(*end, c, k),
        },
        ArcEdge::Arc(a) => ArcEdge::Arc(CircularArc {
            start: rot_point(a.start, c, k),
            end: rot_point(a.end, c, k),
            center: rot_point(a.center, c, k),
            radius: a.radius,
            orientation: a.orientation,
        }),
    }
}

fn rot_rect(s: &ShapePrimitive, c: Point, k: u8) -> ShapePrimitive {
    let f = rect_frame(s);
    let center = rot_point(Point::new(f.cx, f.cy), c, k);
    if k % 2 == 0 {
        ShapePrimitive::rect(center, f.w, f.h)
    } else {
        ShapePrimitive::rect(center, f.h, f.w)
    }
}

/// Builds a canonical-frame candidate after rotating the scene by -k
/// quarter turns, then rotates the produced region back by +k.
fn rotated(
    domain: &ShapePrimitive,
    particle: &ShapePrimitive,
    k: u8,
    r: f64,
    build: fn(&RectFrame, &RectFrame, f64) -> Option<Candidate>,
) -> Option<Candidate> {
    let df = rect_frame(domain);
    let c = Point::new(df.cx, df.cy);
    let back = (4 - k % 4) % 4;
    let dom_r = rot_rect(domain, c, back);
    let part_r = rot_rect(particle, c, back);
    let cand = build(&rect_frame(&dom_r), &rect_frame(&part_r), r)?;
    let loops = cand
        .region
        .loops
        .iter()
        .map(|l| ArcPath::new(l.edges.iter().map(|e| rot_edge(e, c, k)).collect()))
        .collect();
    Some(Candidate {
        region: ArcRegion::new(loops),
        ..cand
    })
}

// ---------------------------------------------------------------------------
// Wall pinch: opening of the annulus when the particle sits close to the
// right wall. The construction wraps around the particle and excludes the
// gap column behind it, entering it through two radius-r arcs tangent to
// the wall and ending on the particle's near corners.
// ---------------------------------------------------------------------------

fn wall_pinch_candidate(dom: &RectFrame, part: &RectFrame, r: f64) -> Option<Candidate> {
    let (x_l, x_r) = (dom.cx - 0.5 * dom.w, dom.cx + 0.5 * dom.w);
    let (y_b, y_t) = (dom.cy - 0.5 * dom.h, dom.cy + 0.5 * dom.h);
    let (p_l, p_r) = (part.cx - 0.5 * part.w, part.cx + 0.5 * part.w);
    let (p_b, p_t) = (part.cy - 0.5 * part.h, part.cy + 0.5 * part.h);
    if r >= 0.5 * dom.w.min(dom.h) {
        return None;
    }
    let d = x_r - p_r;
    if d <= 0.0 || d >= 2.0 * r {
        return None;
    }
    // Only the right wall may pinch.
    if (p_l - x_l) < 2.0 * r || (y_t - p_t) < 2.0 * r || (p_b - y_b) < 2.0 * r {
        return None;
    }
    let s = (d * (2.0 * r - d)).sqrt();
    let y_c_top = p_t + s;
    let y_c_bot = p_b - s;
    let tol = 1e-9 * dom.w.max(dom.h);
    if y_c_top >= y_t - r - tol || y_c_bot <= y_b + r + tol {
        return None;
    }
    for v in [
        Point::new(x_r, y_t),
        Point::new(x_l, y_t),
        Point::new(x_l, y_b),
        Point::new(x_r, y_b),
    ] {
        let dist = ShapePrimitive::rect(
            Point::new(part.cx, part.cy),
            part.w,
            part.h,
        )
        .distance_to_point(v);
        if dist < r * (1.0 + 1e-9) {
            return None;
        }
    }
    let c_top = Point::new(x_r - r, y_c_top);
    let c_bot = Point::new(x_r - r, y_c_bot);
    let edges = vec![
        ArcEdge::arc(
            Point::new(x_r, y_c_bot),
            Point::new(p_r, p_b),
            c_bot,
            Orientation::Ccw,
        ),
        ArcEdge::segment(Point::new(p_r, p_b), Point::new(p_l, p_b)),
        ArcEdge::segment(Point::new(p_l, p_b), Point::new(p_l, p_t)),
        ArcEdge::segment(Point::new(p_l, p_t), Point::new(p_r, p_t)),
        ArcEdge::arc(
            Point::new(p_r, p_t),
            Point::new(x_r, y_c_top),
            c_top,
            Orientation::Ccw,
        ),
        ArcEdge::segment(Point::new(x_r, y_c_top), Point::new(x_r, y_t - r)),
        ArcEdge::arc(
            Point::new(x_r, y_t - r),
            Point::new(x_r - r, y_t),
            Point::new(x_r - r, y_t - r),
            Orientation::Ccw,
        ),
        ArcEdge::segment(Point::new(x_r - r, y_t), Point::new(x_l + r, y_t)),
        ArcEdge::arc(
            Point::new(x_l + r, y_t),
            Point::new(x_l, y_t - r),
            Point::new(x_l + r, y_t - r),
            Orientation::Ccw,
        ),
        ArcEdge::segment(Point::new(x_l, y_t - r), Point::new(x_l, y_b + r)),
        ArcEdge::arc(
            Point::new(x_l, y_b + r),
            Point::new(x_l + r, y_b),
            Point::new(x_l + r, y_b + r),
            Orientation::Ccw,
        ),
        ArcEdge::segment(Point::new(x_l + r, y_b), Point::new(x_r - r, y_b)),
        ArcEdge::arc(
            Point::new(x_r - r, y_b),
            Point::new(x_r, y_b + r),
            Point::new(x_r - r, y_b + r),
            Orientation::Ccw,
        ),
        ArcEdge::segment(Point::new(x_r, y_b + r), Point::new(x_r, y_c_bot)),
    ];
    Some(Candidate {
        region: ArcRegion::new(vec![ArcPath::new(edges)]),
        free_arcs: [0usize, 4, 6, 8, 10, 12].iter().map(|&e| (0, e)).collect(),
        components: 1,
        signature: 2,
    })
}

// ---------------------------------------------------------------------------
// Slab: the component of the opened annulus above a wide particle, when
// both side gaps are too narrow for the structuring disk. Bottom corners
// are either plain fillets tangent to the particle's top edge (r >= gap)
// or arcs dipping into the side gap through the particle's top corner
// (r < gap < 2r).
// ---------------------------------------------------------------------------

fn slab_candidate(dom: &RectFrame, part: &RectFrame, r: f64) -> Option<Candidate> {
    let (x_l, x_r) = (dom.cx - 0.5 * dom.w, dom.cx + 0.5 * dom.w);
    let y_t = dom.cy + 0.5 * dom.h;
    let (p_l, p_r) = (part.cx - 0.5 * part.w, part.cx + 0.5 * part.w);
    let p_t = part.cy + 0.5 * part.h;
    let tol = 1e-9 * dom.w.max(dom.h);
    if r >= 0.5 * dom.w - tol {
        return None;
    }
    let g_l = p_l - x_l;
    let g_r = x_r - p_r;
    if g_l <= 0.0 || g_r <= 0.0 || g_l >= 2.0 * r || g_r >= 2.0 * r {
        return None;
    }
    // Bottom features.
    let (left_arc, left_y, bottom_start, left_pinch) = if r >= g_l {
        (
            ArcEdge::arc(
                Point::new(x_l, p_t + r),
                Point::new(x_l + r, p_t),
                Point::new(x_l + r, p_t + r),
                Orientation::Ccw,
            ),
            p_t + r,
            Point::new(x_l + r, p_t),
            false,
        )
    } else {
        let s = (g_l * (2.0 * r - g_l)).sqrt();
        (
            ArcEdge::arc(
                Point::new(x_l, p_t + s),
                Point::new(p_l, p_t),
                Point::new(x_l + r, p_t + s),
                Orientation::Ccw,
            ),
            p_t + s,
            Point::new(p_l, p_t),
            true,
        )
    };
    let (right_arc, right_y, bottom_end, right_pinch) = if r >= g_r {
        (
            ArcEdge::arc(
                Point::new(x_r - r, p_t),
                Point::new(x_r, p_t + r),
                Point::new(x_r - r, p_t + r),
                Orientation::Ccw,
            ),
            p_t + r,
            Point::new(x_r - r, p_t),
            false,
        )
    } else {
        let s = (g_r * (2.0 * r - g_r)).sqrt();
        (
            ArcEdge::arc(
                Point::new(p_r, p_t),
                Point::new(x_r, p_t + s),
                Point::new(x_r - r, p_t + s),
                Orientation::Ccw,
            ),
            p_t + s,
            Point::new(p_r, p_t),
            true,
        )
    };
    if left_y >= y_t - r - tol || right_y >= y_t - r - tol {
        return None;
    }
    if bottom_start.x >= bottom_end.x - tol {
        return None;
    }
    let edges = vec![
        ArcEdge::segment(bottom_start, bottom_end),
        right_arc,
        ArcEdge::segment(Point::new(x_r, right_y), Point::new(x_r, y_t - r)),
        ArcEdge::arc(
            Point::new(x_r, y_t - r),
            Point::new(x_r - r, y_t),
            Point::new(x_r - r, y_t - r),
            Orientation::Ccw,
        ),
        ArcEdge::segment(Point::new(x_r - r, y_t), Point::new(x_l + r, y_t)),
        ArcEdge::arc(
            Point::new(x_l + r, y_t),
            Point::new(x_l, y_t - r),
            Point::new(x_l + r, y_t - r),
            Orientation::Ccw,
        ),
        ArcEdge::segment(Point::new(x_l, y_t - r), Point::new(x_l, left_y)),
        left_arc,
    ];
    Some(Candidate {
        region: ArcRegion::new(vec![ArcPath::new(edges)]),
        free_arcs: [1usize, 3, 5, 7].iter().map(|&e| (0, e)).collect(),
        components: 1,
        signature: 0x30 | u64::from(left_pinch) | (u64::from(right_pinch) << 1),
    })
}

// ---------------------------------------------------------------------------
// Bridged complement and interior cells.
// ---------------------------------------------------------------------------

fn bridged_complement_candidate(
    domain: &ShapePrimitive,
    particles: &[ShapePrimitive],
    r: f64,
) -> Option<Candidate> {
    let closing = morph::close_r(particles, r).ok()?;
    if !closing.changed {
        return None; // identical to the opened-domain family
    }
    let opened = morph::open_convex(domain, r).ok()?;
    // The closed block must sit strictly inside the opened domain.
    let reaches = corner_reaches(domain, r);
    for (li, l) in closing.region.loops.iter().enumerate() {
        if l.signed_area() <= 0.0 {
            continue;
        }
        for e in &l.edges {
            for t in [0.1, 0.5, 0.9] {
                let p = e.point_at(t);
                if !opened.region.contains(p) {
                    return None;
                }
                for (v, reach) in &reaches {
                    if p.dist(*v) < reach * (1.0 + 1e-9) {
                        return None;
                    }
                }
            }
        }
        let _ = li;
    }
    let mut loops = opened.region.loops;
    let mut free_arcs: Vec<(usize, usize)> =
        opened.fillets.iter().map(|&e| (0usize, e)).collect();
    let full = closing
        .bridges
        .iter()
        .filter(|b| b.kind == morph::BridgeKind::Full)
        .count() as u64;
    let fins = closing.bridges.len() as u64 - full;
    for (li, l) in closing.region.loops.iter().enumerate() {
        if l.signed_area() <= 0.0 {
            continue; // cells are separate candidates, not holes here
        }
        let n = l.edges.len();
        let new_idx = loops.len();
        loops.push(l.reversed());
        for &(fl, fe) in &closing.free_arcs {
            if fl == li {
                free_arcs.push((new_idx, n - 1 - fe));
            }
        }
    }
    Some(Candidate {
        region: ArcRegion::new(loops),
        free_arcs,
        components: 1,
        signature: 0x100_0000 | full | (fins << 24) | ((closing.open_cells as u64) << 48),
    })
}

fn interior_cells_candidate(particles: &[ShapePrimitive], r: f64) -> Option<Candidate> {
    let closing = morph::close_r(particles, r).ok()?;
    if closing.open_cells == 0 {
        return None;
    }
    let mut loops = Vec::new();
    let mut free_arcs = Vec::new();
    let mut ratios: Vec<f64> = Vec::new();
    for (li, l) in closing.region.loops.iter().enumerate() {
        if l.signed_area() >= 0.0 {
            continue;
        }
        let cell = l.reversed();
        ratios.push(cell.length() / cell.signed_area());
        let n = cell.edges.len();
        let new_idx = loops.len();
        for &(fl, fe) in &closing.free_arcs {
            if fl == li {
                free_arcs.push((new_idx, n - 1 - fe));
            }
        }
        loops.push(cell);
    }
    // Only uniform (congruent) cells form a coherent candidate.
    let first = ratios[0];
    if ratios.iter().any(|q| (q - first).abs() > 1e-9 * first) {
        return None;
    }
    let components = loops.len();
    Some(Candidate {
        region: ArcRegion::new(loops),
        free_arcs,
        components,
        signature: 0x200_0000 | components as u64,
    })
}
