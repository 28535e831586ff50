//! Scene descriptions, result persistence, and SVG rendering.
//!
//! Scenes are JSON documents (human-writable, schema-checked), sweep
//! results go to CSV, and solved scenes render to SVG 1.1 with arcs kept
//! as exact elliptical-arc path commands.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{
    containment_clearance, primitive_gap, ArcEdge, ArcRegion, Orientation, Point, ShapePrimitive,
};
use crate::yield_number::YieldSolution;

/// A container domain plus the particle set settling inside it.
#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    pub domain: ShapePrimitive,
    pub particles: Vec<ShapePrimitive>,
    /// Rescale so the total particle area is one (the paper's length
    /// scaling). Applied by [`Scene::normalized`].
    pub normalize: bool,
    pub label: String,
    /// Carried through but never interpreted; lengths are nondimensional.
    pub unit: Option<String>,
}

impl Scene {
    pub fn new(domain: ShapePrimitive, particles: Vec<ShapePrimitive>) -> Self {
        Scene {
            domain,
            particles,
            normalize: false,
            label: String::new(),
            unit: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn particle_area(&self) -> f64 {
        self.particles.iter().map(|p| p.area()).sum()
    }

    /// Semantic validation: particles are valid, pairwise disjoint, and
    /// strictly inside the domain. Errors carry a JSON-pointer-style path.
    pub fn validate(&self) -> Result<()> {
        self.domain.validate().map_err(|e| Error::SceneValidation {
            pointer: "/domain".into(),
            message: e.to_string(),
        })?;
        if self.particles.is_empty() {
            return Err(Error::SceneValidation {
                pointer: "/particles".into(),
                message: "at least one particle is required".into(),
            });
        }
        for (i, p) in self.particles.iter().enumerate() {
            p.validate().map_err(|e| Error::SceneValidation {
                pointer: format!("/particles/{i}"),
                message: e.to_string(),
            })?;
            let clearance = containment_clearance(&self.domain, p);
            if clearance <= 0.0 {
                return Err(Error::SceneValidation {
                    pointer: format!("/particles/{i}"),
                    message: format!(
                        "particle is not strictly inside the domain (clearance {clearance:.6})"
                    ),
                });
            }
            for (j, q) in self.particles.iter().enumerate().take(i) {
                let gap = primitive_gap(q, p);
                if gap <= 0.0 {
                    return Err(Error::SceneValidation {
                        pointer: format!("/particles/{i}"),
                        message: format!("overlaps or touches particle {j} (gap {gap:.6})"),
                    });
                }
            }
        }
        Ok(())
    }

    /// Applies the normalization flag: rescales the whole scene so that the
    /// particle area sums to one.
    pub fn normalized(&self) -> Result<Scene> {
        self.validate()?;
        if !self.normalize {
            return Ok(self.clone());
        }
        let total = self.particle_area();
        let factor = 1.0 / total.sqrt();
        let scaled = Scene {
            domain: self.domain.scaled(factor),
            particles: self.particles.iter().map(|p| p.scaled(factor)).collect(),
            normalize: false,
            label: self.label.clone(),
            unit: self.unit.clone(),
        };
        debug_assert!((scaled.particle_area() - 1.0).abs() < 1e-12);
        Ok(scaled)
    }

    pub fn scaled(&self, factor: f64) -> Scene {
        Scene {
            domain: self.domain.scaled(factor),
            particles: self.particles.iter().map(|p| p.scaled(factor)).collect(),
            normalize: self.normalize,
            label: self.label.clone(),
            unit: self.unit.clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// JSON schema
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct SceneDoc {
    #[serde(default)]
    label: String,
    #[serde(default)]
    normalize: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unit: Option<String>,
    domain: ShapeDoc,
    particles: Vec<ShapeDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum ShapeDoc {
    Disk {
        #[serde(default)]
        center: [f64; 2],
        radius: f64,
    },
    Square {
        #[serde(default)]
        center: [f64; 2],
        side: f64,
    },
    Rect {
        #[serde(default)]
        center: [f64; 2],
        width: f64,
        height: f64,
    },
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
}

impl ShapeDoc {
    fn to_shape(&self) -> ShapePrimitive {
        match self {
            ShapeDoc::Disk { center, radius } => {
                ShapePrimitive::disk(Point::new(center[0], center[1]), *radius)
            }
            ShapeDoc::Square { center, side } => {
                ShapePrimitive::square(Point::new(center[0], center[1]), *side)
            }
            ShapeDoc::Rect {
                center,
                width,
                height,
            } => ShapePrimitive::rect(Point::new(center[0], center[1]), *width, *height),
            ShapeDoc::Polygon { vertices } => ShapePrimitive::polygon(
                vertices.iter().map(|v| Point::new(v[0], v[1])).collect(),
            ),
        }
    }

    fn from_shape(s: &ShapePrimitive) -> ShapeDoc {
        match s {
            ShapePrimitive::Disk { center, radius } => ShapeDoc::Disk {
                center: [center.x, center.y],
                radius: *radius,
            },
            ShapePrimitive::Rect {
                center,
                width,
                height,
            } if width == height => ShapeDoc::Square {
                center: [center.x, center.y],
                side: *width,
            },
            ShapePrimitive::Rect {
                center,
                width,
                height,
            } => ShapeDoc::Rect {
                center: [center.x, center.y],
                width: *width,
                height: *height,
            },
            ShapePrimitive::Polygon { vertices } => ShapeDoc::Polygon {
                vertices: vertices.iter().map(|p| [p.x, p.y]).collect(),
            },
        }
    }
}

/// Parses and validates a scene document. Normalization stays a flag; call
/// [`Scene::normalized`] to apply it.
pub fn parse_scene(text: &str) -> Result<Scene> {
    let doc: SceneDoc = serde_json::from_str(text)
        .map_err(|e| Error::SceneParse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let scene = Scene {
        domain: doc.domain.to_shape(),
        particles: doc.particles.iter().map(ShapeDoc::to_shape).collect(),
        normalize: doc.normalize,
        label: doc.label,
        unit: doc.unit,
    };
    scene.validate()?;
    Ok(scene)
}

/// Serializes a scene; `parse_scene(write_scene(s))` round-trips exactly.
pub fn write_scene(scene: &Scene) -> String {
    let doc = SceneDoc {
        label: scene.label.clone(),
        normalize: scene.normalize,
        unit: scene.unit.clone(),
        domain: ShapeDoc::from_shape(&scene.domain),
        particles: scene.particles.iter().map(ShapeDoc::from_shape).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("scene serializes")
}

// ---------------------------------------------------------------------------
// Results CSV
// ---------------------------------------------------------------------------

/// Where a number came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Geometric,
    Oracle,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Provenance::Geometric => "geometric",
            Provenance::Oracle => "oracle",
        })
    }
}

/// One solved data point.
#[derive(Clone, Debug)]
pub struct ResultRecord {
    pub label: String,
    pub param: f64,
    pub lambda_c: f64,
    pub y_c: f64,
    pub s_value: f64,
    pub config: String,
    pub provenance: Provenance,
    /// Extra measures for inspection; not part of the CSV schema.
    pub set_measures: Vec<(String, f64)>,
    /// Seconds since the epoch at solve time; not part of the CSV schema.
    pub timestamp: u64,
}

impl ResultRecord {
    pub fn now_stamp() -> u64 {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    }
}

fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    format!("{x:.11e}")
}

/// Writes records as CSV with the fixed header
/// `label,param,lambda_c,y_c,s_value,config,provenance`, 12 significant
/// digits, in the given order.
pub fn write_results(records: &[ResultRecord], path: &Path) -> Result<()> {
    let mut out = String::from("label,param,lambda_c,y_c,s_value,config,provenance\n");
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.label,
            sig12(r.param),
            sig12(r.lambda_c),
            sig12(r.y_c),
            sig12(r.s_value),
            r.config,
            r.provenance
        )
        .expect("string write");
    }
    std::fs::write(path, out)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// SVG rendering
// ---------------------------------------------------------------------------

fn path_data(region: &ArcRegion) -> String {
    let mut d = String::new();
    for l in &region.loops {
        if l.edges.is_empty() {
            continue;
        }
        let s = l.edges[0].start();
        write!(d, "M {:.12} {:.12} ", s.x, s.y).unwrap();
        for e in &l.edges {
            match e {
                ArcEdge::Segment { end, .. } => {
                    write!(d, "L {:.12} {:.12} ", end.x, end.y).unwrap();
                }
                ArcEdge::Arc(a) => {
                    let large = if a.sweep() > std::f64::consts::PI { 1 } else { 0 };
                    let sweep = match a.orientation {
                        Orientation::Ccw => 1,
                        Orientation::Cw => 0,
                    };
                    write!(
                        d,
                        "A {:.12} {:.12} 0 {} {} {:.12} {:.12} ",
                        a.radius, a.radius, large, sweep, a.end.x, a.end.y
                    )
                    .unwrap();
                }
            }
        }
        d.push_str("Z ");
    }
    d.pop();
    d
}

/// Renders a solved scene: domain outline, particles filled, the enclosure
/// set (bridges) in a second fill underneath, and the Cheeger set in a
/// third. Arc radii are written with full precision so they can be parsed
/// back for verification.
pub fn render_svg(solution: &YieldSolution, scene: &Scene, path: &Path) -> Result<()> {
    let region = scene.domain.to_region();
    let bb = region.bbox().expanded(0.05 * region.bbox().width().max(1.0));
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{:.6} {:.6} {:.6} {:.6}" width="640" height="640">"#,
        bb.min.x,
        -bb.max.y,
        bb.width(),
        bb.height()
    )
    .unwrap();
    // Flip to y-up math coordinates.
    writeln!(svg, r#"<g transform="scale(1,-1)">"#).unwrap();
    let scale = bb.width().max(bb.height());
    let stroke = 0.004 * scale;
    writeln!(
        svg,
        r##"<path d="{}" fill="#9ecae1" fill-rule="evenodd" stroke="none"/>"##,
        path_data(&solution.omega_c.set)
    )
    .unwrap();
    writeln!(
        svg,
        r##"<path d="{}" fill="#fdd0a2" fill-rule="evenodd" stroke="none"/>"##,
        path_data(&solution.omega_1c.set)
    )
    .unwrap();
    for p in &scene.particles {
        writeln!(
            svg,
            r##"<path d="{}" fill="#969696" fill-rule="evenodd" stroke="none"/>"##,
            path_data(&p.to_region())
        )
        .unwrap();
    }
    writeln!(
        svg,
        r##"<path d="{}" fill="none" stroke="#252525" stroke-width="{stroke:.6}"/>"##,
        path_data(&region)
    )
    .unwrap();
    writeln!(svg, "</g>").unwrap();
    writeln!(svg, "</svg>").unwrap();
    std::fs::write(path, svg)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_disk_in_disk_example() {
        let text = r#"{"domain":{"type":"disk","radius":2},
                       "particles":[{"type":"disk","center":[0,0],"radius":0.5641895835}]}"#;
        let scene = parse_scene(text).unwrap();
        assert!((scene.particle_area() - 1.0).abs() < 1e-8);
        assert!(scene.label.is_empty());
    }

    #[test]
    fn parse_square_in_square() {
        let text = r#"{"label":"sq","domain":{"type":"square","side":3.33},
                       "particles":[{"type":"square","center":[0,0],"side":1}]}"#;
        let scene = parse_scene(text).unwrap();
        assert_eq!(scene.label, "sq");
        assert!((scene.domain.area() - 3.33 * 3.33).abs() < 1e-12);
    }

    #[test]
    fn overlapping_particles_rejected_with_pointer() {
        let text = r#"{"domain":{"type":"square","side":5},
                       "particles":[{"type":"disk","center":[0,0],"radius":0.5},
                                    {"type":"disk","center":[0.5,0],"radius":0.5}]}"#;
        match parse_scene(text) {
            Err(Error::SceneValidation { pointer, .. }) => {
                assert_eq!(pointer, "/particles/1");
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn particle_outside_domain_rejected() {
        let text = r#"{"domain":{"type":"square","side":2},
                       "particles":[{"type":"disk","center":[2,0],"radius":0.3}]}"#;
        assert!(matches!(
            parse_scene(text),
            Err(Error::SceneValidation { .. })
        ));
    }

    #[test]
    fn syntax_error_carries_location() {
        match parse_scene("{not json") {
            Err(Error::SceneParse(msg)) => assert!(msg.contains("line 1")),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn scene_roundtrip_exact() {
        let scene = Scene {
            domain: ShapePrimitive::square(Point::ORIGIN, 3.33),
            particles: vec![
                ShapePrimitive::disk(Point::new(0.1, -0.7), 0.123456789012345),
                ShapePrimitive::rect(Point::new(-0.9, 0.4), 0.3, 0.2),
            ],
            normalize: true,
            label: "roundtrip".into(),
            unit: Some("cm".into()),
        };
        let text = write_scene(&scene);
        let back = parse_scene(&text).unwrap();
        assert_eq!(scene, back);
    }

    #[test]
    fn normalization_scales_to_unit_particle_area() {
        let mut scene = Scene::new(
            ShapePrimitive::square(Point::ORIGIN, 10.0),
            vec![ShapePrimitive::square(Point::ORIGIN, 2.0)],
        );
        scene.normalize = true;
        let n = scene.normalized().unwrap();
        assert!((n.particle_area() - 1.0).abs() < 1e-12);
        assert!((n.domain.area() - 25.0).abs() < 1e-12);
    }

    #[test]
    fn csv_format() {
        let rec = ResultRecord {
            label: "t".into(),
            param: 2.0,
            lambda_c: 1.392941559055,
            y_c: 0.202517320228,
            s_value: 4.937848914451,
            config: "whole-annulus".into(),
            provenance: Provenance::Geometric,
            set_measures: vec![],
            timestamp: 0,
        };
        let dir = std::env::temp_dir().join("yieldgeom_csv_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("one.csv");
        write_results(std::slice::from_ref(&rec), &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "label,param,lambda_c,y_c,s_value,config,provenance"
        );
        let row = lines.next().unwrap();
        assert!(row.starts_with("t,2.00000000000e0,1.39294155906e0,"));
        assert!(row.ends_with("whole-annulus,geometric"));
        // Header-only file for an empty list.
        let empty = dir.join("empty.csv");
        write_results(&[], &empty).unwrap();
        assert_eq!(
            std::fs::read_to_string(&empty).unwrap(),
            "label,param,lambda_c,y_c,s_value,config,provenance\n"
        );
    }
}
