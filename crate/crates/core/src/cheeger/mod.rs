//! Cheeger sets and constants of convex domains and of annular domains
//! `domain \ particles`.
//!
//! The annular solver enumerates candidate families (the whole annulus, the
//! opened domain minus the particles, and scene-specific openings of the
//! annulus itself), solves the scalar self-consistency `r Per(C_r) = |C_r|`
//! on each family by bisection, and keeps the minimum-ratio result. Every
//! candidate is an admissible subset of the annulus, so the minimum over
//! families upper-bounds the true constant and attains it on the supported
//! scene families.

mod families;

use crate::error::{Error, Result};
use crate::geom::{ArcEdge, ArcRegion, ShapePrimitive};
use crate::morph;
use families::{enumerate_families, Candidate, Family};

/// Relative tolerance for the self-consistency root in r.
pub const ROOT_TOL: f64 = 1e-12;
/// Relative tolerance under which candidate ratios count as tied.
pub const TIE_TOL: f64 = 1e-9;

/// Which candidate family produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyTag {
    /// The full annulus `domain \ particles`.
    WholeAnnulus,
    /// `open_r(domain) \ particles`.
    OpenedDomain,
    /// Opening of the annulus that pinches off at one domain wall.
    WallPinch,
    /// Slab component of the opened annulus beside a wide particle.
    Slab,
    /// `open_r(domain) \ close_r(particles)`: the complement of the
    /// bridged particle block.
    BridgedComplement,
    /// Isolated cell components between lattice particles.
    InteriorCell,
    /// Opening of a bare convex domain (no particles).
    ConvexDomain,
}

impl std::fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FamilyTag::WholeAnnulus => "whole-annulus",
            FamilyTag::OpenedDomain => "opened-domain",
            FamilyTag::WallPinch => "wall-pinch",
            FamilyTag::Slab => "slab",
            FamilyTag::BridgedComplement => "bridged-complement",
            FamilyTag::InteriorCell => "interior-cell",
            FamilyTag::ConvexDomain => "convex-domain",
        };
        f.write_str(s)
    }
}

/// An optimal set for the ratio `Per(E)/|E|` together with its constant.
#[derive(Clone, Debug)]
pub struct CheegerResult {
    pub set: ArcRegion,
    /// Cheeger constant, reported from the converged geometry.
    pub lambda: f64,
    /// `1/lambda`, the radius of every free boundary arc.
    pub radius: f64,
    pub family: FamilyTag,
    /// Set when tied candidates were merged into their union.
    pub maximal: bool,
    /// (loop, edge) positions of the free arcs (boundary pieces on neither
    /// the domain wall nor a particle).
    pub free_arcs: Vec<(usize, usize)>,
    /// Number of connected components of the set.
    pub components: usize,
}

impl CheegerResult {
    fn from_candidate(cand: Candidate, family: FamilyTag) -> Self {
        let lambda = cand.region.perimeter() / cand.region.area();
        CheegerResult {
            radius: 1.0 / lambda,
            lambda,
            set: cand.region,
            family,
            maximal: false,
            free_arcs: cand.free_arcs,
            components: cand.components,
        }
    }
}

/// Cheeger set of a convex domain: `open_r(domain)` where r solves
/// `|erode_r(domain)| = pi r^2` (unique on convex bodies). The constant is
/// `1/r`.
pub fn cheeger_convex(domain: &ShapePrimitive) -> Result<CheegerResult> {
    domain.validate().map_err(Error::Geom)?;
    let inr = morph::inradius(domain);
    if !(inr > 0.0) {
        return Err(Error::Geom(crate::error::GeomError::DegeneratePrimitive(
            "domain has empty interior".into(),
        )));
    }
    let f = |r: f64| -> f64 {
        let area = morph::erode_convex(domain, r).map_or(0.0, |e| e.area());
        area - std::f64::consts::PI * r * r
    };
    let mut lo = 0.0;
    let mut hi = inr;
    debug_assert!(f(lo) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= ROOT_TOL * hi {
            break;
        }
    }
    let r = 0.5 * (lo + hi);
    let opened = morph::open_convex(domain, r)?;
    let lambda = opened.region.perimeter() / opened.region.area();
    debug_assert!((lambda * r - 1.0).abs() < 1e-9);
    Ok(CheegerResult {
        set: opened.region,
        lambda,
        radius: 1.0 / lambda,
        family: FamilyTag::ConvexDomain,
        maximal: true,
        free_arcs: opened.fillets.iter().map(|&e| (0, e)).collect(),
        components: 1,
    })
}

/// Cheeger set of `domain \ particles`.
///
/// Falls back to the whole annulus when no other family admits a root, so
/// a valid scene always yields a result.
pub fn cheeger_annular(
    domain: &ShapePrimitive,
    particles: &[ShapePrimitive],
) -> Result<CheegerResult> {
    if particles.is_empty() {
        return cheeger_convex(domain);
    }
    domain.validate().map_err(Error::Geom)?;
    for (i, p) in particles.iter().enumerate() {
        p.validate().map_err(Error::Geom)?;
        let clearance = crate::geom::containment_clearance(domain, p);
        if clearance <= 0.0 {
            return Err(Error::Geom(crate::error::GeomError::ParticleOutsideDomain {
                index: i,
                clearance,
            }));
        }
        for (j, q) in particles.iter().enumerate().take(i) {
            let gap = crate::geom::primitive_gap(q, p);
            if gap <= 0.0 {
                return Err(Error::Geom(crate::error::GeomError::ParticlesOverlap {
                    a: j,
                    b: i,
                    gap,
                }));
            }
        }
    }

    let mut results: Vec<CheegerResult> = Vec::new();
    for family in enumerate_families(domain, particles) {
        results.extend(solve_family(&family));
    }
    if results.is_empty() {
        return Err(Error::NoCheegerCandidate);
    }

    // Deduplicate geometrically identical candidates from different
    // families (e.g. a disk domain, where the opened domain is the domain).
    results.sort_by(|a, b| a.lambda.partial_cmp(&b.lambda).unwrap());
    let best = results[0].lambda;
    let tied: Vec<CheegerResult> = results
        .into_iter()
        .take_while(|r| r.lambda <= best * (1.0 + TIE_TOL))
        .collect();
    let mut distinct: Vec<CheegerResult> = Vec::new();
    for r in tied {
        // Congruent but disjoint ties (e.g. symmetric slabs) must survive
        // dedup, so compare positions as well as measures.
        let dup = distinct.iter().any(|d| {
            let (ba, bb) = (d.set.bbox(), r.set.bbox());
            let scale = ba.width().max(ba.height()).max(1.0);
            (d.set.area() - r.set.area()).abs() < 1e-9 * d.set.area()
                && (d.set.perimeter() - r.set.perimeter()).abs() < 1e-9 * d.set.perimeter()
                && ba.min.dist(bb.min) < 1e-9 * scale
                && ba.max.dist(bb.max) < 1e-9 * scale
        });
        if !dup {
            distinct.push(r);
        }
    }
    if distinct.len() == 1 {
        return Ok(distinct.pop_unwrap());
    }
    // Tied distinct candidates: report their union when they are disjoint
    // (the symmetric-slab case); overlapping ties keep the largest member.
    let disjoint = pairwise_disjoint(&distinct);
    if disjoint {
        let mut it = distinct.into_iter();
        let mut merged = it.next().unwrap();
        for other in it {
            let offset = merged.set.loops.len();
            merged.set = merged.set.union_disjoint(&other.set);
            merged
                .free_arcs
                .extend(other.free_arcs.iter().map(|&(l, e)| (l + offset, e)));
            merged.components += other.components;
        }
        merged.maximal = true;
        merged.lambda = merged.set.perimeter() / merged.set.area();
        merged.radius = 1.0 / merged.lambda;
        Ok(merged)
    } else {
        let mut best = distinct
            .into_iter()
            .max_by(|a, b| a.set.area().partial_cmp(&b.set.area()).unwrap())
            .unwrap();
        best.maximal = true;
        Ok(best)
    }
}

trait PopUnwrap<T> {
    fn pop_unwrap(self) -> T;
}

impl<T> PopUnwrap<T> for Vec<T> {
    fn pop_unwrap(mut self) -> T {
        self.pop().unwrap()
    }
}

fn pairwise_disjoint(results: &[CheegerResult]) -> bool {
    for i in 0..results.len() {
        for j in (i + 1)..results.len() {
            let a = &results[i].set;
            let b = &results[j].set;
            if !a.bbox().intersects(&b.bbox()) {
                continue;
            }
            // Sampled overlap test.
            for l in &a.loops {
                for e in &l.edges {
                    if b.contains(e.point_at(0.37)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Solves the self-consistency equation on one family, returning every
/// structurally consistent root.
fn solve_family(family: &Family) -> Vec<CheegerResult> {
    match family {
        Family::Direct { candidate, tag } => {
            let mut out = Vec::new();
            if candidate.region.area() > 0.0 {
                out.push(CheegerResult::from_candidate(candidate.clone(), *tag));
            }
            out
        }
        Family::Parametric {
            generator,
            r_min,
            r_max,
            tag,
        } => {
            let mut out = Vec::new();
            if !(r_max > r_min) {
                return out;
            }
            let g = |cand: &Candidate, r: f64| r * cand.region.perimeter() - cand.region.area();
            const SCAN: usize = 192;
            let mut prev: Option<(f64, f64, u64)> = None;
            for k in 0..=SCAN {
                let r = r_min + (r_max - r_min) * (k as f64) / (SCAN as f64);
                let cand = generator(r);
                let cur = cand.as_ref().map(|c| (r, g(c, r), c.signature));
                if let (Some((r0, g0, s0)), Some((r1, g1, s1))) = (prev, cur) {
                    // Bracket must be structurally consistent and run from
                    // negative to positive (g is increasing on a branch).
                    if s0 == s1 && g0 < 0.0 && g1 >= 0.0 {
                        if let Some(res) =
                            bisect_family(generator, r0, r1, s0, *tag)
                        {
                            out.push(res);
                        }
                    }
                }
                prev = cur;
            }
            out
        }
    }
}

fn bisect_family(
    generator: &families::Generator,
    mut lo: f64,
    mut hi: f64,
    signature: u64,
    tag: FamilyTag,
) -> Option<CheegerResult> {
    let g = |r: f64| -> Option<(f64, Candidate)> {
        let c = generator(r)?;
        if c.signature != signature {
            return None;
        }
        Some((r * c.region.perimeter() - c.region.area(), c))
    };
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        match g(mid) {
            Some((val, _)) => {
                if val < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            None => return None, // signature changed inside the bracket
        }
        if hi - lo <= ROOT_TOL * hi {
            break;
        }
    }
    let root = 0.5 * (lo + hi);
    let (_, cand) = g(root)?;
    let lambda = cand.region.perimeter() / cand.region.area();
    // The root and the reported ratio must agree.
    if (lambda * root - 1.0).abs() > 1e-8 {
        return None;
    }
    Some(CheegerResult::from_candidate(cand, tag))
}

/// Per-arc diagnostic from [`validate_cheeger`].
#[derive(Clone, Debug)]
pub struct ArcDiagnostic {
    pub loc: (usize, usize),
    pub radius_dev: f64,
    pub sweep: f64,
    pub ok: bool,
}

/// Structured diagnostics for a Cheeger result.
#[derive(Clone, Debug)]
pub struct CheegerDiagnostics {
    pub lambda_dev: f64,
    pub radius_lambda_consistent: bool,
    pub arcs: Vec<ArcDiagnostic>,
    pub violations: usize,
}

/// Checks the structural invariants of a result: the ratio matches the set,
/// `radius * lambda = 1`, every free arc has radius `1/lambda` and sweeps
/// at most half its circle. Violations are reported, not raised.
pub fn validate_cheeger(result: &CheegerResult) -> CheegerDiagnostics {
    let lambda_geom = result.set.perimeter() / result.set.area();
    let lambda_dev = (lambda_geom - result.lambda).abs() / result.lambda;
    let mut arcs = Vec::new();
    let mut violations = usize::from(lambda_dev > 1e-10);
    for &(l, e) in &result.free_arcs {
        let edge = &result.set.loops[l].edges[e];
        match edge {
            ArcEdge::Arc(a) => {
                let radius_dev = (a.radius - result.radius).abs();
                let sweep = a.sweep();
                let ok = radius_dev <= 1e-9 * result.radius.max(1.0)
                    && sweep <= std::f64::consts::PI + 1e-9;
                if !ok {
                    violations += 1;
                }
                arcs.push(ArcDiagnostic {
                    loc: (l, e),
                    radius_dev,
                    sweep,
                    ok,
                });
            }
            ArcEdge::Segment { .. } => {
                violations += 1;
                arcs.push(ArcDiagnostic {
                    loc: (l, e),
                    radius_dev: f64::INFINITY,
                    sweep: 0.0,
                    ok: false,
                });
            }
        }
    }
    CheegerDiagnostics {
        lambda_dev,
        radius_lambda_consistent: (result.radius * result.lambda - 1.0).abs() < 1e-12,
        arcs,
        violations,
    }
}

#[cfg(test)]
mod tests;
