use super::path::ArcPath;
use super::{Bbox, Point};
use crate::error::{Error, GeomError, Result};

/// A region bounded by one or more closed arc-polygons. Loops with positive
/// signed area are components, loops with negative signed area are holes.
/// Area is the signed sum; perimeter counts every loop, holes included
/// (the Dirichlet convention: jumps across the whole boundary count).
#[derive(Clone, Debug)]
pub struct ArcRegion {
    pub loops: Vec<ArcPath>,
}

impl ArcRegion {
    pub fn new(loops: Vec<ArcPath>) -> Self {
        ArcRegion { loops }
    }

    pub fn area(&self) -> f64 {
        self.loops.iter().map(|l| l.signed_area()).sum()
    }

    pub fn perimeter(&self) -> f64 {
        self.loops.iter().map(|l| l.length()).sum()
    }

    pub fn bbox(&self) -> Bbox {
        let mut b = Bbox::empty();
        for l in &self.loops {
            b.merge(&l.bbox());
        }
        b
    }

    pub fn translated(&self, v: Point) -> ArcRegion {
        ArcRegion {
            loops: self.loops.iter().map(|l| l.translated(v)).collect(),
        }
    }

    /// Scales about the origin. Area scales by `factor^2`, perimeter by
    /// `factor`.
    pub fn scaled(&self, factor: f64) -> Result<ArcRegion> {
        if !(factor > 0.0) {
            return Err(GeomError::BadScaleFactor(factor).into());
        }
        Ok(ArcRegion {
            loops: self.loops.iter().map(|l| l.scaled(factor)).collect(),
        })
    }

    /// Even-odd containment across all loops.
    pub fn contains(&self, p: Point) -> bool {
        let mut crossings = 0usize;
        for l in &self.loops {
            if l.bbox().expanded(0.0).contains(p) || l.bbox().max.x >= p.x {
                crossings += l.ray_crossings(p);
            }
        }
        crossings % 2 == 1
    }

    /// Merges another region's loops in. Only correct when the two regions
    /// are disjoint, which is how tied Cheeger components are combined.
    pub fn union_disjoint(&self, other: &ArcRegion) -> ArcRegion {
        let mut loops = self.loops.clone();
        loops.extend(other.loops.iter().cloned());
        ArcRegion { loops }
    }

    pub fn validate(&self) -> Result<()> {
        if self.loops.is_empty() {
            return Err(GeomError::NoOuterLoop.into());
        }
        for l in &self.loops {
            l.validate()?;
        }
        let outers: Vec<usize> = (0..self.loops.len())
            .filter(|&i| self.loops[i].signed_area() > 0.0)
            .collect();
        if outers.is_empty() {
            return Err(GeomError::NoOuterLoop.into());
        }
        for (i, l) in self.loops.iter().enumerate() {
            if l.signed_area() < 0.0 {
                let probe = l
                    .interior_sample()
                    .or_else(|| Some(l.edges[0].point_at(0.5)))
                    .unwrap();
                let inside_some_outer = outers.iter().any(|&o| self.loops[o].contains(probe));
                if !inside_some_outer {
                    return Err(GeomError::HoleOutsideOuter { hole: i }.into());
                }
            }
        }
        let area = self.area();
        if !(area > 0.0) {
            return Err(GeomError::NonPositiveArea { area }.into());
        }
        Ok(())
    }
}

/// Region with the particles punched out as holes. Area subtracts, perimeter
/// adds: `area = |domain| - sum |particle|`, `Per = Per(domain) + sum Per`.
pub fn difference_annulus(domain: &ArcRegion, particles: &[ArcRegion]) -> Result<ArcRegion> {
    let mut loops = domain.loops.clone();
    for (i, p) in particles.iter().enumerate() {
        // Each particle must sit strictly inside the domain and clear of the
        // other particles; primitive-level checks catch most misuse earlier,
        // this one guards direct callers.
        let sample = p.loops[0]
            .interior_sample()
            .unwrap_or_else(|| p.loops[0].edges[0].point_at(0.5));
        if !domain.contains(sample) {
            return Err(Error::Geom(GeomError::ParticleOutsideDomain {
                index: i,
                clearance: 0.0,
            }));
        }
        for (j, q) in particles.iter().enumerate().take(i) {
            if q.contains(sample)
                || p.contains(
                    q.loops[0]
                        .interior_sample()
                        .unwrap_or_else(|| q.loops[0].edges[0].point_at(0.5)),
                )
            {
                return Err(Error::Geom(GeomError::ParticlesOverlap {
                    a: j,
                    b: i,
                    gap: 0.0,
                }));
            }
        }
        for l in &p.loops {
            loops.push(l.reversed());
        }
    }
    Ok(ArcRegion { loops })
}
