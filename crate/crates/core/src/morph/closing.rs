//! Closings of particle sets by direct tangent-arc construction.
//!
//! For two convex bodies closer than 2r, the closing adds a bridge bounded
//! by concave arcs of radius r tangent to (or through the facing corners
//! of) both bodies. On a lattice of equal disks, bridges are built pairwise
//! between neighbors; configurations whose bridges would interfere are
//! rejected toward the raster oracle instead of being approximated.

use std::f64::consts::TAU;

use crate::error::{Result, UnsupportedGeometry};
use crate::geom::{ArcEdge, ArcPath, ArcRegion, Orientation, Point, ShapePrimitive};

/// How a pair interaction manifests in the closing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BridgeKind {
    /// One connected bridge bounded by two concave radius-r arcs.
    Full,
    /// The tangent balls overlap across the gap: the closing only grows two
    /// disconnected fins, one hugging each body.
    Fins,
}

/// One pair interaction, with the boundary-length and area increments it
/// contributes when included in the closed set.
#[derive(Clone, Debug)]
pub struct Bridge {
    pub a: usize,
    pub b: usize,
    pub kind: BridgeKind,
    pub d_per: f64,
    pub d_area: f64,
}

/// A closed particle set.
#[derive(Clone, Debug)]
pub struct Closing {
    pub region: ArcRegion,
    pub bridges: Vec<Bridge>,
    /// (loop, edge) indices of the radius-r arcs introduced by the closing.
    pub free_arcs: Vec<(usize, usize)>,
    /// Interior cells left open by the closing (holes of the closed set).
    pub open_cells: usize,
    pub changed: bool,
    pub radius: f64,
}

/// Closing of a particle set with radius r.
///
/// Supported families: a single convex primitive (identity), equal-radius
/// disks (pair or lattice), and a pair of congruent axis-aligned rectangles
/// facing each other squarely.
pub fn close_r(particles: &[ShapePrimitive], r: f64) -> Result<Closing> {
    close_r_selected(particles, r, None)
}

/// Same as [`close_r`] but restricted to a subset of the pair interactions
/// (`keep[k]` decides whether interaction k of the full closing is applied).
/// The enclosure step uses this to realize the T-minimal bridge subset.
pub(crate) fn close_r_selected(
    particles: &[ShapePrimitive],
    r: f64,
    keep: Option<&[bool]>,
) -> Result<Closing> {
    if particles.is_empty() {
        return Err(UnsupportedGeometry::new("closing of an empty particle set").into());
    }
    if particles.len() == 1 {
        return Ok(unchanged(particles, r));
    }
    if r == 0.0 {
        return Ok(unchanged(particles, r));
    }
    // No pair close enough to interact: identity for any particle family.
    let any_interaction = (0..particles.len()).any(|i| {
        (0..i).any(|j| crate::geom::primitive_gap(&particles[i], &particles[j]) < 2.0 * r)
    });
    if !any_interaction {
        return Ok(unchanged(particles, r));
    }
    if particles
        .iter()
        .all(|p| matches!(p, ShapePrimitive::Disk { .. }))
    {
        return close_disks(particles, r, keep);
    }
    if particles.len() == 2 {
        if let (
            ShapePrimitive::Rect {
                center: c0,
                width: w0,
                height: h0,
            },
            ShapePrimitive::Rect {
                center: c1,
                width: w1,
                height: h1,
            },
        ) = (&particles[0], &particles[1])
        {
            return close_rect_pair(*c0, *w0, *h0, *c1, *w1, *h1, r, keep);
        }
    }
    Err(UnsupportedGeometry::new("closing of this particle family").into())
}

fn unchanged(particles: &[ShapePrimitive], r: f64) -> Closing {
    let mut loops = Vec::new();
    for p in particles {
        loops.extend(p.to_region().loops);
    }
    Closing {
        region: ArcRegion::new(loops),
        bridges: Vec::new(),
        free_arcs: Vec::new(),
        open_cells: 0,
        changed: false,
        radius: r,
    }
}

// ---------------------------------------------------------------------------
// Equal-radius disks
// ---------------------------------------------------------------------------

struct DiskInteraction {
    a: usize,
    b: usize,
    kind: BridgeKind,
    /// Consumed half-angle on each disk around the direction to the partner.
    phi: f64,
    o_plus: Point,
    o_minus: Point,
    t_a_plus: Point,
    t_a_minus: Point,
    t_b_plus: Point,
    t_b_minus: Point,
    /// Fin waist points (ball-ball intersections), fins only.
    q_a: Point,
    q_b: Point,
    d_per: f64,
    d_area: f64,
}

fn disk_interaction(
    a: usize,
    b: usize,
    ca: Point,
    cb: Point,
    delta: f64,
    r: f64,
) -> Option<DiskInteraction> {
    let p = ca.dist(cb);
    let g = p - 2.0 * delta;
    if g >= 2.0 * r {
        return None;
    }
    let u = cb.sub(ca).unit();
    let w = u.perp();
    let mid = ca.add(cb).scale(0.5);
    let hsq = (r + delta) * (r + delta) - 0.25 * p * p;
    debug_assert!(hsq > 0.0);
    let h = hsq.sqrt();
    let o_plus = mid.add(w.scale(h));
    let o_minus = mid.sub(w.scale(h));
    let lam = delta / (delta + r);
    let t_a_plus = ca.add(o_plus.sub(ca).scale(lam));
    let t_a_minus = ca.add(o_minus.sub(ca).scale(lam));
    let t_b_plus = cb.add(o_plus.sub(cb).scale(lam));
    let t_b_minus = cb.add(o_minus.sub(cb).scale(lam));
    let phi = h.atan2(0.5 * p);
    let kind = if h >= r { BridgeKind::Full } else { BridgeKind::Fins };
    let (q_a, q_b, d_per, d_area);
    match kind {
        BridgeKind::Full => {
            q_a = mid;
            q_b = mid;
            // The bridge hugs the disks, so walking its boundary with the
            // gap-facing disk arcs CCW circles the bridge clockwise; the
            // enclosed area is minus the signed area.
            let bridge_loop = ArcPath::new(vec![
                ArcEdge::arc(t_a_minus, t_a_plus, ca, Orientation::Ccw),
                ArcEdge::arc(t_a_plus, t_b_plus, o_plus, Orientation::Ccw),
                ArcEdge::arc(t_b_plus, t_b_minus, cb, Orientation::Ccw),
                ArcEdge::arc(t_b_minus, t_a_minus, o_minus, Orientation::Ccw),
            ]);
            let signed = bridge_loop.signed_area();
            debug_assert!(signed < 0.0);
            d_area = -signed;
            let arc_len = ArcEdge::arc(t_a_plus, t_b_plus, o_plus, Orientation::Ccw).length();
            d_per = 2.0 * arc_len - 2.0 * (2.0 * phi * delta);
        }
        BridgeKind::Fins => {
            let wq = (r * r - h * h).sqrt();
            q_a = mid.sub(u.scale(wq));
            q_b = mid.add(u.scale(wq));
            let fin_a = ArcPath::new(vec![
                ArcEdge::arc(t_a_minus, t_a_plus, ca, Orientation::Ccw),
                ArcEdge::arc(t_a_plus, q_a, o_plus, Orientation::Ccw),
                ArcEdge::arc(q_a, t_a_minus, o_minus, Orientation::Ccw),
            ]);
            let fin_b = ArcPath::new(vec![
                ArcEdge::arc(t_b_plus, t_b_minus, cb, Orientation::Ccw),
                ArcEdge::arc(t_b_minus, q_b, o_minus, Orientation::Ccw),
                ArcEdge::arc(q_b, t_b_plus, o_plus, Orientation::Ccw),
            ]);
            let signed = fin_a.signed_area() + fin_b.signed_area();
            debug_assert!(signed < 0.0);
            d_area = -signed;
            let added: f64 = fin_a.edges[1].length()
                + fin_a.edges[2].length()
                + fin_b.edges[1].length()
                + fin_b.edges[2].length();
            d_per = added - 2.0 * (2.0 * phi * delta);
        }
    }
    Some(DiskInteraction {
        a,
        b,
        kind,
        phi,
        o_plus,
        o_minus,
        t_a_plus,
        t_a_minus,
        t_b_plus,
        t_b_minus,
        q_a,
        q_b,
        d_per,
        d_area,
    })
}

/// Angular interval a bridge consumes on one disk's boundary.
struct Attachment {
    start: f64,
    end: f64,
    inter: usize,
    a_side: bool,
}

fn close_disks(particles: &[ShapePrimitive], r: f64, keep: Option<&[bool]>) -> Result<Closing> {
    let mut centers = Vec::with_capacity(particles.len());
    let mut delta = None;
    for p in particles {
        match p {
            ShapePrimitive::Disk { center, radius } => {
                match delta {
                    None => delta = Some(*radius),
                    Some(d) => {
                        if (d - radius).abs() > 1e-9 * d.max(1.0) {
                            return Err(UnsupportedGeometry::new(
                                "closing of unequal-radius disks",
                            )
                            .into());
                        }
                    }
                }
                centers.push(*center);
            }
            _ => unreachable!(),
        }
    }
    let delta = delta.unwrap();
    let n = centers.len();

    let mut interactions = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if let Some(it) = disk_interaction(i, j, centers[i], centers[j], delta, r) {
                interactions.push(it);
            }
        }
    }
    if let Some(keep) = keep {
        assert_eq!(keep.len(), interactions.len());
        interactions = interactions
            .into_iter()
            .zip(keep.iter())
            .filter_map(|(it, &k)| k.then_some(it))
            .collect();
    }
    if interactions.is_empty() {
        return Ok(unchanged(particles, r));
    }

    // Tangent balls must clear every other disk, otherwise the pairwise
    // construction is wrong for this configuration.
    for it in &interactions {
        for (k, c) in centers.iter().enumerate() {
            if k == it.a || k == it.b {
                continue;
            }
            for o in [it.o_plus, it.o_minus] {
                if o.dist(*c) < r + delta - 1e-12 {
                    return Err(UnsupportedGeometry::new(
                        "bridge tangent ball collides with a third disk",
                    )
                    .into());
                }
            }
        }
    }

    // Attachment intervals per disk, then overlap check.
    let mut attach: Vec<Vec<Attachment>> = (0..n).map(|_| Vec::new()).collect();
    for (idx, it) in interactions.iter().enumerate() {
        let theta_ab = centers[it.b].sub(centers[it.a]).angle();
        attach[it.a].push(Attachment {
            start: norm_angle(theta_ab - it.phi),
            end: norm_angle(theta_ab + it.phi),
            inter: idx,
            a_side: true,
        });
        let theta_ba = centers[it.a].sub(centers[it.b]).angle();
        attach[it.b].push(Attachment {
            start: norm_angle(theta_ba - it.phi),
            end: norm_angle(theta_ba + it.phi),
            inter: idx,
            a_side: false,
        });
    }
    for list in attach.iter_mut() {
        list.sort_by(|x, y| x.start.partial_cmp(&y.start).unwrap());
        for k in 0..list.len() {
            let cur = &list[k];
            let nxt = &list[(k + 1) % list.len()];
            let span = norm_angle(cur.end - cur.start);
            let gap_to_next = if list.len() == 1 {
                TAU - span
            } else {
                norm_angle(nxt.start - cur.start) - span
            };
            if gap_to_next <= 1e-10 {
                return Err(UnsupportedGeometry::new(
                    "bridge attachment intervals overlap on a disk",
                )
                .into());
            }
        }
    }

    // Walk edges. Vertices are (disk, attachmentислание slot, at-end?) plus fin
    // waist points; we link edges through a successor table.
    let mut edges: Vec<(ArcEdge, bool)> = Vec::new(); // (edge, is_r_arc)
    let mut next: Vec<usize> = Vec::new();
    // Map from (disk, slot, at_end) to the edge index leaving that vertex.
    let mut leaving_end: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut leaving_start: Vec<Vec<usize>> = vec![Vec::new(); n];

    let point_on = |i: usize, ang: f64| -> Point {
        Point::new(
            centers[i].x + delta * ang.cos(),
            centers[i].y + delta * ang.sin(),
        )
    };

    // Surviving disk arcs: leave the end of slot k, arrive at start of k+1.
    let mut arrival_at_start: Vec<Vec<usize>> = vec![Vec::new(); n]; // edge idx arriving
    for i in 0..n {
        let m = attach[i].len();
        leaving_end[i] = vec![usize::MAX; m.max(1)];
        leaving_start[i] = vec![usize::MAX; m.max(1)];
        arrival_at_start[i] = vec![usize::MAX; m.max(1)];
        if m == 0 {
            continue;
        }
        for k in 0..m {
            let from_ang = attach[i][k].end;
            let to_slot = (k + 1) % m;
            let to_ang = attach[i][to_slot].start;
            let sweep = norm_angle(to_ang - from_ang);
            let a0 = point_on(i, from_ang);
            let a1 = point_on(i, to_ang);
            let idx = edges.len();
            if sweep > std::f64::consts::PI {
                // Split long surviving arcs so no edge sweeps >= 2pi-eps and
                // the path stays numerically well conditioned.
                let mid = point_on(i, from_ang + 0.5 * sweep);
                edges.push((
                    ArcEdge::arc(a0, mid, centers[i], Orientation::Ccw),
                    false,
                ));
                edges.push((
                    ArcEdge::arc(mid, a1, centers[i], Orientation::Ccw),
                    false,
                ));
                next.push(idx + 1);
                next.push(usize::MAX);
            } else {
                edges.push((
                    ArcEdge::arc(a0, a1, centers[i], Orientation::Ccw),
                    false,
                ));
                next.push(usize::MAX);
            }
            leaving_end[i][k] = idx;
            arrival_at_start[i][to_slot] = edges.len() - 1;
        }
    }

    // Bridge arcs: leave interval starts, arrive at interval ends.
    for (idx, it) in interactions.iter().enumerate() {
        // Slot of this interaction on each disk.
        let slot_a = attach[it.a].iter().position(|at| at.inter == idx && at.a_side).unwrap();
        let slot_b = attach[it.b].iter().position(|at| at.inter == idx && !at.a_side).unwrap();
        match it.kind {
            BridgeKind::Full => {
                // minus arc: a-start -> b-end; plus arc: b-start -> a-end.
                let e_minus = edges.len();
                edges.push((
                    ArcEdge::arc(it.t_a_minus, it.t_b_minus, it.o_minus, Orientation::Cw),
                    true,
                ));
                next.push(leaving_end[it.b][slot_b]);
                let e_plus = edges.len();
                edges.push((
                    ArcEdge::arc(it.t_b_plus, it.t_a_plus, it.o_plus, Orientation::Cw),
                    true,
                ));
                next.push(leaving_end[it.a][slot_a]);
                leaving_start[it.a][slot_a] = e_minus;
                leaving_start[it.b][slot_b] = e_plus;
            }
            BridgeKind::Fins => {
                // a-side: a-start -> q_a -> a-end.
                let e1 = edges.len();
                edges.push((
                    ArcEdge::arc(it.t_a_minus, it.q_a, it.o_minus, Orientation::Cw),
                    true,
                ));
                edges.push((
                    ArcEdge::arc(it.q_a, it.t_a_plus, it.o_plus, Orientation::Cw),
                    true,
                ));
                next.push(e1 + 1);
                next.push(leaving_end[it.a][slot_a]);
                leaving_start[it.a][slot_a] = e1;
                // b-side: b-start -> q_b -> b-end.
                let e2 = edges.len();
                edges.push((
                    ArcEdge::arc(it.t_b_plus, it.q_b, it.o_plus, Orientation::Cw),
                    true,
                ));
                edges.push((
                    ArcEdge::arc(it.q_b, it.t_b_minus, it.o_minus, Orientation::Cw),
                    true,
                ));
                next.push(e2 + 1);
                next.push(leaving_end[it.b][slot_b]);
                leaving_start[it.b][slot_b] = e2;
            }
        }
    }

    // Surviving arcs flow into the bridge arc leaving the slot they arrive at.
    for i in 0..n {
        for (slot, &edge_idx) in arrival_at_start[i].iter().enumerate() {
            if edge_idx != usize::MAX {
                next[edge_idx] = leaving_start[i][slot];
            }
        }
    }

    // Trace loops.
    let mut visited = vec![false; edges.len()];
    let mut loops: Vec<ArcPath> = Vec::new();
    let mut loop_r_arcs: Vec<Vec<usize>> = Vec::new();
    for start in 0..edges.len() {
        if visited[start] {
            continue;
        }
        let mut cur = start;
        let mut path = Vec::new();
        let mut r_arcs = Vec::new();
        loop {
            assert!(!visited[cur], "walk revisited an edge before closing its loop");
            visited[cur] = true;
            if edges[cur].1 {
                r_arcs.push(path.len());
            }
            path.push(edges[cur].0);
            cur = next[cur];
            assert_ne!(cur, usize::MAX, "walk fell off an unlinked edge");
            if cur == start {
                break;
            }
        }
        loops.push(ArcPath::new(path));
        loop_r_arcs.push(r_arcs);
    }

    // Untouched disks stay as standalone loops.
    for i in 0..n {
        if attach[i].is_empty() {
            let d = ShapePrimitive::disk(centers[i], delta).to_region();
            for l in d.loops {
                loops.push(l);
                loop_r_arcs.push(Vec::new());
            }
        }
    }

    // Interior cells show up as negative loops (holes of the closing). A
    // radius-r ball must still fit in every cell; if not, neighboring
    // bridge interiors are effectively merging, which the pairwise
    // construction cannot represent. On the supported uniform lattices the
    // cell midpoint is the optimal ball center.
    let mut open_cells = 0;
    let mut final_loops = Vec::new();
    let mut free_arcs = Vec::new();
    for (l, r_arcs) in loops.into_iter().zip(loop_r_arcs) {
        if l.signed_area() < 0.0 {
            let bb = l.bbox();
            let mid = Point::new(0.5 * (bb.min.x + bb.max.x), 0.5 * (bb.min.y + bb.max.y));
            let clearance = centers
                .iter()
                .map(|c| c.dist(mid) - delta)
                .fold(f64::INFINITY, f64::min);
            if clearance < r - 1e-12 {
                return Err(UnsupportedGeometry::new(
                    "closing would absorb an interior cell (merging bridges)",
                )
                .into());
            }
            open_cells += 1;
        }
        let li = final_loops.len();
        for e in r_arcs {
            free_arcs.push((li, e));
        }
        final_loops.push(l);
    }

    let bridges = interactions
        .iter()
        .map(|it| Bridge {
            a: it.a,
            b: it.b,
            kind: it.kind,
            d_per: it.d_per,
            d_area: it.d_area,
        })
        .collect();

    Ok(Closing {
        region: ArcRegion::new(final_loops),
        bridges,
        free_arcs,
        open_cells,
        changed: true,
        radius: r,
    })
}

fn norm_angle(a: f64) -> f64 {
    a.rem_euclid(TAU)
}

// ---------------------------------------------------------------------------
// Congruent axis-aligned rectangle pair
// ---------------------------------------------------------------------------

#[allow(clippy::too_many_arguments)]
fn close_rect_pair(
    c0: Point,
    w0: f64,
    h0: f64,
    c1: Point,
    w1: f64,
    h1: f64,
    r: f64,
    keep: Option<&[bool]>,
) -> Result<Closing> {
    let tol = 1e-9 * (w0 + h0).max(1.0);
    if (w0 - w1).abs() > tol || (h0 - h1).abs() > tol {
        return Err(UnsupportedGeometry::new("closing of non-congruent rectangles").into());
    }
    let horizontal = (c0.y - c1.y).abs() <= tol;
    let vertical = (c0.x - c1.x).abs() <= tol;
    if !(horizontal ^ vertical) {
        return Err(UnsupportedGeometry::new(
            "closing of rectangles that do not face each other squarely",
        )
        .into());
    }
    // Work in the facing frame: u points from A to B, v = u.perp().
    let (u, du, e) = if horizontal {
        (Point::new(1.0, 0.0), 0.5 * w0, 0.5 * h0)
    } else {
        (Point::new(0.0, 1.0), 0.5 * h0, 0.5 * w0)
    };
    let (ca, cb) = if c1.sub(c0).dot(u) > 0.0 { (c0, c1) } else { (c1, c0) };
    let v = u.perp();
    let g = cb.sub(ca).dot(u) - 2.0 * du;
    debug_assert!(g > 0.0, "rectangles overlap");
    let particles = [
        ShapePrimitive::rect(c0, w0, h0),
        ShapePrimitive::rect(c1, w1, h1),
    ];
    if g >= 2.0 * r || keep.map(|k| k.iter().all(|&x| !x)).unwrap_or(false) {
        return Ok(unchanged(&particles, r));
    }
    let hh = (r * r - 0.25 * g * g).sqrt();
    let sag = r - hh;
    let m = ca.add(u.scale(du + 0.5 * g));
    let o_plus = m.add(v.scale(e + hh));
    let o_minus = m.sub(v.scale(e + hh));
    let a_fp = ca.add(u.scale(du)).add(v.scale(e));
    let a_fm = ca.add(u.scale(du)).sub(v.scale(e));
    let a_bp = ca.sub(u.scale(du)).add(v.scale(e));
    let a_bm = ca.sub(u.scale(du)).sub(v.scale(e));
    let b_fp = cb.sub(u.scale(du)).add(v.scale(e));
    let b_fm = cb.sub(u.scale(du)).sub(v.scale(e));
    let b_bp = cb.add(u.scale(du)).add(v.scale(e));
    let b_bm = cb.add(u.scale(du)).sub(v.scale(e));

    if sag < e - tol {
        // Single bridge across the whole facing edges.
        let edges = vec![
            ArcEdge::segment(a_bm, a_fm),
            ArcEdge::arc(a_fm, b_fm, o_minus, Orientation::Cw),
            ArcEdge::segment(b_fm, b_bm),
            ArcEdge::segment(b_bm, b_bp),
            ArcEdge::segment(b_bp, b_fp),
            ArcEdge::arc(b_fp, a_fp, o_plus, Orientation::Cw),
            ArcEdge::segment(a_fp, a_bp),
            ArcEdge::segment(a_bp, a_bm),
        ];
        let theta = (0.5 * g / r).asin();
        let d_per = 2.0 * (2.0 * r * theta) - 2.0 * (2.0 * e);
        let d_area = g * 2.0 * e - 2.0 * r * r * (theta - theta.sin() * theta.cos());
        let region = ArcRegion::new(vec![ArcPath::new(edges)]);
        debug_assert!((region.area() - (2.0 * w0 * h0 + d_area)).abs() < 1e-9);
        return Ok(Closing {
            region,
            bridges: vec![Bridge {
                a: 0,
                b: 1,
                kind: BridgeKind::Full,
                d_per,
                d_area,
            }],
            free_arcs: vec![(0, 1), (0, 5)],
            open_cells: 0,
            changed: true,
            radius: r,
        });
    }

    // The tangent balls overlap across the gap midline: only two fins
    // survive, one hugging each facing edge, meeting the balls at the
    // waist points q_a, q_b.
    let wq = (r * r - (e + hh) * (e + hh)).sqrt();
    if wq >= 0.5 * g - tol {
        // The ball overlap covers the facing edges entirely: identity.
        return Ok(unchanged(&particles, r));
    }
    let q_a = m.sub(u.scale(wq));
    let q_b = m.add(u.scale(wq));
    let loop_a = vec![
        ArcEdge::segment(a_bm, a_fm),
        ArcEdge::arc(a_fm, q_a, o_minus, Orientation::Cw),
        ArcEdge::arc(q_a, a_fp, o_plus, Orientation::Cw),
        ArcEdge::segment(a_fp, a_bp),
        ArcEdge::segment(a_bp, a_bm),
    ];
    let loop_b = vec![
        ArcEdge::segment(b_fm, b_bm),
        ArcEdge::segment(b_bm, b_bp),
        ArcEdge::segment(b_bp, b_fp),
        ArcEdge::arc(b_fp, q_b, o_plus, Orientation::Cw),
        ArcEdge::arc(q_b, b_fm, o_minus, Orientation::Cw),
    ];
    let region = ArcRegion::new(vec![ArcPath::new(loop_a), ArcPath::new(loop_b)]);
    let d_area = region.area() - 2.0 * w0 * h0;
    let d_per = region.perimeter() - 2.0 * (2.0 * (w0 + h0));
    debug_assert!(d_area > 0.0);
    Ok(Closing {
        region,
        bridges: vec![Bridge {
            a: 0,
            b: 1,
            kind: BridgeKind::Fins,
            d_per,
            d_area,
        }],
        free_arcs: vec![(0, 1), (0, 2), (1, 3), (1, 4)],
        open_cells: 0,
        changed: true,
        radius: r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn disk_pair(p: f64, delta: f64) -> Vec<ShapePrimitive> {
        vec![
            ShapePrimitive::disk(Point::ORIGIN, delta),
            ShapePrimitive::disk(Point::new(p, 0.0), delta),
        ]
    }

    #[test]
    fn far_disks_unchanged() {
        let parts = disk_pair(3.0, 0.5);
        // gap = 2.0, r = 1.0 -> 2r = gap: no bridge
        let c = close_r(&parts, 1.0).unwrap();
        assert!(!c.changed);
        assert!((c.region.area() - 2.0 * PI * 0.25).abs() < 1e-12);
    }

    #[test]
    fn single_convex_is_identity() {
        let sq = [ShapePrimitive::square(Point::ORIGIN, 1.0)];
        let c = close_r(&sq, 5.0).unwrap();
        assert!(!c.changed);
        assert!((c.region.area() - 1.0).abs() < 1e-14);
        assert!((c.region.perimeter() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn disk_pair_full_bridge_measures() {
        let delta = 0.4;
        let p = 1.0;
        let r = 0.5; // h = sqrt(0.81 - 0.25) = 0.748 > r: full bridge
        let parts = disk_pair(p, delta);
        let c = close_r(&parts, r).unwrap();
        assert!(c.changed);
        assert_eq!(c.bridges.len(), 1);
        assert_eq!(c.bridges[0].kind, BridgeKind::Full);
        // One connected loop, no cells.
        assert_eq!(c.region.loops.len(), 1);
        let base_area = 2.0 * PI * delta * delta;
        let base_per = 2.0 * TAU * delta;
        assert!((c.region.area() - (base_area + c.bridges[0].d_area)).abs() < 1e-12);
        assert!(
            (c.region.perimeter() - (base_per + c.bridges[0].d_per)).abs() < 1e-12
        );
        assert!(c.bridges[0].d_area > 0.0);
        assert_eq!(c.free_arcs.len(), 2);
        // Bridge points between the disks belong to the closing.
        assert!(c.region.contains(Point::new(0.5, 0.0)));
    }

    #[test]
    fn disk_pair_fins_regime() {
        let delta = 0.2;
        let p = 1.0;
        // h = sqrt((r+0.2)^2 - 0.25); with r = 0.45: h = sqrt(0.4225-0.25)=0.415 < r
        let r = 0.45;
        let parts = disk_pair(p, delta);
        let c = close_r(&parts, r).unwrap();
        assert!(c.changed);
        assert_eq!(c.bridges[0].kind, BridgeKind::Fins);
        // Two components (disk+fin each), four r-arcs.
        assert_eq!(c.region.loops.len(), 2);
        assert_eq!(c.free_arcs.len(), 4);
        // The gap midpoint is coverable, hence NOT in the closing.
        assert!(!c.region.contains(Point::new(0.5, 0.0)));
        assert!(c.bridges[0].d_area > 0.0);
        let base_area = 2.0 * PI * delta * delta;
        assert!((c.region.area() - (base_area + c.bridges[0].d_area)).abs() < 1e-12);
    }

    #[test]
    fn lattice_two_by_two_has_open_cell() {
        let delta = 0.3;
        let p = 1.0;
        let r = 0.35; // gap 0.4 < 0.7 = 2r; h=sqrt(0.65^2-0.25)=0.406 >= r: full bridges
        let parts: Vec<_> = [(0.0, 0.0), (p, 0.0), (0.0, p), (p, p)]
            .iter()
            .map(|&(x, y)| ShapePrimitive::disk(Point::new(x, y), delta))
            .collect();
        let c = close_r(&parts, r).unwrap();
        assert_eq!(c.bridges.len(), 4);
        // cell inradius = p/sqrt2 - delta = 0.407 > r: cell stays open.
        assert_eq!(c.open_cells, 1);
        let holes = c
            .region
            .loops
            .iter()
            .filter(|l| l.signed_area() < 0.0)
            .count();
        assert_eq!(holes, 1);
        let base_area = 4.0 * PI * delta * delta;
        let bridge_area: f64 = c.bridges.iter().map(|b| b.d_area).sum();
        assert!((c.region.area() - (base_area + bridge_area)).abs() < 1e-12);
        // Center of the cell is not part of the closing.
        assert!(!c.region.contains(Point::new(0.5, 0.5)));
        c.region.validate().unwrap();
    }

    #[test]
    fn merging_bridges_rejected() {
        // r + delta > p/sqrt2: the tangent balls reach the diagonal disks,
        // i.e. neighboring bridges would merge through the cell. Such
        // configurations go to the raster oracle.
        let delta = 0.3;
        let p = 1.0;
        let r = 0.45;
        let parts: Vec<_> = [(0.0, 0.0), (p, 0.0), (0.0, p), (p, p)]
            .iter()
            .map(|&(x, y)| ShapePrimitive::disk(Point::new(x, y), delta))
            .collect();
        assert!(close_r(&parts, r).is_err());
    }

    #[test]
    fn rect_pair_bridge_matches_formula() {
        let g: f64 = 0.2;
        let r: f64 = 0.5;
        let parts = vec![
            ShapePrimitive::square(Point::ORIGIN, 1.0),
            ShapePrimitive::square(Point::new(1.0 + g, 0.0), 1.0),
        ];
        let c = close_r(&parts, r).unwrap();
        assert!(c.changed);
        let theta = (0.5 * g / r).asin();
        let seg = r * r * (theta - theta.sin() * theta.cos());
        let expect_area = 2.0 + g - 2.0 * seg;
        assert!((c.region.area() - expect_area).abs() < 1e-12);
        let expect_per = 8.0 - 2.0 + 2.0 * (2.0 * r * theta);
        assert!((c.region.perimeter() - expect_per).abs() < 1e-12);
        c.region.validate().unwrap();
        // Mid-gap on the axis is inside the bridge.
        assert!(c.region.contains(Point::new(1.0 + 0.5 * g - 0.5, 0.0)));
    }

    #[test]
    fn rect_pair_far_apart_unchanged() {
        let parts = vec![
            ShapePrimitive::square(Point::ORIGIN, 1.0),
            ShapePrimitive::square(Point::new(3.0, 0.0), 1.0),
        ];
        let c = close_r(&parts, 0.9).unwrap();
        assert!(!c.changed);
    }

    #[test]
    fn vertical_rect_pair_works() {
        let g = 0.3;
        let r = 0.6;
        let parts = vec![
            ShapePrimitive::rect(Point::ORIGIN, 2.0, 1.0),
            ShapePrimitive::rect(Point::new(0.0, 1.0 + g), 2.0, 1.0),
        ];
        let c = close_r(&parts, r).unwrap();
        assert!(c.changed);
        let theta = (0.5_f64 * g / r).asin();
        let seg = r * r * (theta - theta.sin() * theta.cos());
        assert!((c.region.area() - (4.0 + g * 2.0 - 2.0 * seg)).abs() < 1e-12);
        c.region.validate().unwrap();
    }

    #[test]
    fn mixed_particles_rejected_once_they_interact() {
        let parts = vec![
            ShapePrimitive::square(Point::ORIGIN, 1.0),
            ShapePrimitive::disk(Point::new(2.0, 0.0), 0.4),
        ];
        // Gap 1.1: no interaction at r = 0.5, so the closing is the identity.
        assert!(!close_r(&parts, 0.5).unwrap().changed);
        // At r = 0.6 a bridge would form; mixed pairs are unsupported.
        assert!(close_r(&parts, 0.6).is_err());
    }

    #[test]
    fn rect_pair_fins_regime() {
        // Wide gap relative to the edge: sag >= e, fins only.
        let parts = vec![
            ShapePrimitive::square(Point::new(-1.75, 0.0), 1.0),
            ShapePrimitive::square(Point::new(1.75, 0.0), 1.0),
        ];
        let r = 1.0 / 0.7; // gap 2.5 < 2r ~ 2.857
        let c = close_r(&parts, r).unwrap();
        assert!(c.changed);
        assert_eq!(c.bridges[0].kind, BridgeKind::Fins);
        assert_eq!(c.region.loops.len(), 2);
        assert!(c.bridges[0].d_area > 0.0);
        // Mid-gap stays uncovered by the closing.
        assert!(!c.region.contains(Point::ORIGIN));
        c.region.validate().unwrap();
    }
}
