//! Critical yield numbers for solid particles settling in a Bingham fluid,
//! in the anti-plane (exchange flow) setting.
//!
//! The computation runs two consecutive geometric problems on exact
//! segment-and-arc regions: a Cheeger problem on the fluid annulus, then a
//! perimeter-plus-volume minimization over sets containing the particles.
//! A raster total-variation solver ([`tvgrid`]) independently estimates the
//! same quantity for cross-validation.

pub mod analytic;
pub mod cheeger;
pub mod enclosure;
pub mod error;
pub mod geom;
pub mod morph;
pub mod sceneio;
pub mod tvgrid;
pub mod yield_number;

pub use cheeger::{cheeger_annular, cheeger_convex, validate_cheeger, CheegerResult};
pub use enclosure::{minimal_enclosure, t_value, EnclosureResult};
pub use error::{Error, Result};
pub use geom::{ArcEdge, ArcPath, ArcRegion, Point, ShapePrimitive};
pub use sceneio::{parse_scene, render_svg, write_results, Scene};
pub use yield_number::{
    asymptotic_yield, solve_two_step, verify_feasible_ratio, ThreeLevelFunction, YieldSolution,
};
