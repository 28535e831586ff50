use super::edge::{edges_intersect, ArcEdge, MonotonePiece};
use super::{Bbox, Point, COORD_EPS};
use crate::error::GeomError;

/// A closed chain of segments and arcs. Outer boundaries run CCW (positive
/// signed area), holes CW.
#[derive(Clone, Debug)]
pub struct ArcPath {
    pub edges: Vec<ArcEdge>,
}

impl ArcPath {
    pub fn new(edges: Vec<ArcEdge>) -> Self {
        ArcPath { edges }
    }

    pub fn signed_area(&self) -> f64 {
        0.5 * self.edges.iter().map(|e| e.double_area()).sum::<f64>()
    }

    pub fn length(&self) -> f64 {
        self.edges.iter().map(|e| e.length()).sum()
    }

    pub fn bbox(&self) -> Bbox {
        let mut b = Bbox::empty();
        for e in &self.edges {
            b.merge(&e.bbox());
        }
        b
    }

    pub fn reversed(&self) -> ArcPath {
        ArcPath {
            edges: self.edges.iter().rev().map(|e| e.reversed()).collect(),
        }
    }

    pub fn translated(&self, v: Point) -> ArcPath {
        ArcPath {
            edges: self.edges.iter().map(|e| e.translated(v)).collect(),
        }
    }

    pub fn scaled(&self, factor: f64) -> ArcPath {
        ArcPath {
            edges: self.edges.iter().map(|e| e.scaled(factor)).collect(),
        }
    }

    /// Number of times a rightward ray from `p` crosses the path.
    pub fn ray_crossings(&self, p: Point) -> usize {
        let mut pieces: Vec<MonotonePiece> = Vec::new();
        for e in &self.edges {
            e.y_monotone_pieces(&mut pieces);
        }
        pieces.iter().filter(|m| m.ray_crosses(p)).count()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.ray_crossings(p) % 2 == 1
    }

    /// A point guaranteed to be strictly inside the loop (for orientation
    /// and hole-assignment checks): probes inward offsets of edge midpoints.
    pub fn interior_sample(&self) -> Option<Point> {
        let scale = {
            let b = self.bbox();
            b.width().max(b.height()).max(1e-12)
        };
        let inward_sign = if self.signed_area() >= 0.0 { 1.0 } else { -1.0 };
        for e in &self.edges {
            let m = e.point_at(0.5);
            let t = e.point_at(0.5 + 1e-6).sub(e.point_at(0.5 - 1e-6));
            if t.norm() == 0.0 {
                continue;
            }
            let n = t.unit().perp().scale(inward_sign);
            for frac in [1e-3, 1e-2, 1e-1] {
                let q = m.add(n.scale(frac * scale));
                if self.contains(q) {
                    return Some(q);
                }
            }
        }
        None
    }

    pub fn validate(&self) -> Result<(), GeomError> {
        if self.edges.is_empty() {
            return Err(GeomError::ZeroArea);
        }
        let scale = {
            let b = self.bbox();
            b.width().max(b.height()).max(1.0)
        };
        for (i, e) in self.edges.iter().enumerate() {
            e.validate(i)?;
            let next = &self.edges[(i + 1) % self.edges.len()];
            let gap = e.end().dist(next.start());
            if gap > COORD_EPS * scale {
                return Err(GeomError::OpenPath { edge: i, gap });
            }
        }
        if self.signed_area().abs() < (COORD_EPS * scale) * (COORD_EPS * scale) {
            return Err(GeomError::ZeroArea);
        }
        self.check_simple(scale)?;
        Ok(())
    }

    fn check_simple(&self, scale: f64) -> Result<(), GeomError> {
        let tol = COORD_EPS * scale;
        let boxes: Vec<Bbox> = self.edges.iter().map(|e| e.bbox()).collect();
        let n = self.edges.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if !boxes[i].expanded(tol).intersects(&boxes[j]) {
                    continue;
                }
                if adjacent {
                    continue; // shared joint; tolerated by edges_intersect anyway
                }
                if edges_intersect(&self.edges[i], &self.edges[j], tol) {
                    return Err(GeomError::SelfIntersection { a: i, b: j });
                }
            }
        }
        Ok(())
    }
}
