//! The second geometric problem: minimize `T(E) = Per(E) + lambda |E|`
//! over sets E containing the particles.
//!
//! Candidates are the particle set itself and closings of it with radius
//! `1/lambda`; because bridges are disjoint, each contributes its own
//! `d_per + lambda d_area` to T independently, so the minimizer keeps
//! exactly the strictly favorable bridges. Ties go to the smaller set
//! (minimality with respect to inclusion).

use crate::error::{Error, Result};
use crate::geom::{ArcRegion, ShapePrimitive};
use crate::morph;

/// Minimizer of the enclosure problem.
#[derive(Clone, Debug)]
pub struct EnclosureResult {
    /// The minimal minimizing set (contains every particle).
    pub set: ArcRegion,
    pub t_value: f64,
    pub lambda_used: f64,
    /// Whether the set strictly contains the particles.
    pub bridged: bool,
    /// (loop, edge) positions of concave radius-`1/lambda` arcs.
    pub free_arcs: Vec<(usize, usize)>,
    /// T of the bare particle set, for reporting.
    pub t_particles: f64,
}

/// `Per(E) + lambda |E|`.
pub fn t_value(set: &ArcRegion, lambda: f64) -> f64 {
    set.perimeter() + lambda * set.area()
}

/// Solves the enclosure problem for the given particle set and multiplier.
pub fn minimal_enclosure(
    particles: &[ShapePrimitive],
    lambda: f64,
) -> Result<EnclosureResult> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::DomainError(format!(
            "enclosure multiplier must be positive, got {lambda}"
        )));
    }
    for p in particles {
        p.validate().map_err(Error::Geom)?;
    }
    let r = 1.0 / lambda;
    let bare = particles_region(particles);
    let t_particles = t_value(&bare, lambda);

    if particles.len() <= 1 {
        return Ok(EnclosureResult {
            set: bare,
            t_value: t_particles,
            lambda_used: lambda,
            bridged: false,
            free_arcs: Vec::new(),
            t_particles,
        });
    }

    let full = morph::close_r(particles, r)?;
    if !full.changed {
        return Ok(EnclosureResult {
            set: bare,
            t_value: t_particles,
            lambda_used: lambda,
            bridged: false,
            free_arcs: Vec::new(),
            t_particles,
        });
    }

    // Keep exactly the bridges that strictly lower T.
    let tie_eps = 1e-12 * (1.0 + t_particles.abs());
    let keep: Vec<bool> = full
        .bridges
        .iter()
        .map(|b| b.d_per + lambda * b.d_area < -tie_eps)
        .collect();
    if keep.iter().all(|&k| !k) {
        return Ok(EnclosureResult {
            set: bare,
            t_value: t_particles,
            lambda_used: lambda,
            bridged: false,
            free_arcs: Vec::new(),
            t_particles,
        });
    }
    let chosen = morph::close_r_selected(particles, r, Some(&keep))?;
    let t_expected: f64 = t_particles
        + full
            .bridges
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(b, _)| b.d_per + lambda * b.d_area)
            .sum::<f64>();
    let t_direct = t_value(&chosen.region, lambda);
    debug_assert!(
        (t_direct - t_expected).abs() <= 1e-9 * t_expected.abs().max(1.0),
        "bridge additivity violated: {t_direct} vs {t_expected}"
    );
    Ok(EnclosureResult {
        set: chosen.region,
        t_value: t_direct,
        lambda_used: lambda,
        bridged: true,
        free_arcs: chosen.free_arcs,
        t_particles,
    })
}

fn particles_region(particles: &[ShapePrimitive]) -> ArcRegion {
    let mut loops = Vec::new();
    for p in particles {
        loops.extend(p.to_region().loops);
    }
    ArcRegion::new(loops)
}
