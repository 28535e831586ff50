use yieldgeom::geom::{Point, ShapePrimitive};
use yieldgeom::sceneio::Scene;
use yieldgeom::tvgrid::{rasterize, CellKind};

// Hand-built smeared feasible field: radial profile, linear ramps of
// half-width w around each interface, then mean-corrected on free cells.
fn main() {
    let scene = Scene::new(
        ShapePrimitive::disk(Point::ORIGIN, 2.0),
        vec![ShapePrimitive::disk(
            Point::ORIGIN,
            1.0 / std::f64::consts::PI.sqrt(),
        )],
    );
    let p = rasterize(&scene, 128).unwrap();
    let n = p.n;
    let rs = 1.0 / std::f64::consts::PI.sqrt();
    let alpha = 1.0 / (4.0 * std::f64::consts::PI - 1.0);
    for w in [0.02, 0.05, 0.1, 0.2, 0.3] {
        let mut u = vec![0.0; n * n];
        for row in 0..n {
            for col in 0..n {
                let q = p.cell_center(row, col);
                let r = q.norm();
                let idx = row * n + col;
                u[idx] = match p.mask[idx] {
                    CellKind::Solid => 1.0,
                    CellKind::Exterior => 0.0,
                    CellKind::Free => {
                        // ramp 1 -> -alpha around rs, ramp -alpha -> 0 around R=2
                        if r < rs + w {
                            let t = ((r - rs) / w).clamp(0.0, 1.0);
                            1.0 + (-alpha - 1.0) * t
                        } else if r > 2.0 - w {
                            let t = ((2.0 - r) / w).clamp(0.0, 1.0);
                            -alpha * t
                        } else {
                            -alpha
                        }
                    }
                };
            }
        }
        // mean-correct free cells
        let mut s = 0.0;
        let mut cnt = 0.0;
        for (v, k) in u.iter().zip(&p.mask) {
            if *k == CellKind::Free {
                s += v;
                cnt += 1.0;
            }
        }
        let shift = (-(p.solid_cells as f64) - s) / cnt;
        for (v, k) in u.iter_mut().zip(&p.mask) {
            if *k == CellKind::Free {
                *v += shift;
            }
        }
        let mut tv = 0.0;
        for row in 0..n {
            for col in 0..n {
                let idx = row * n + col;
                let c = u[idx];
                let dx = if col + 1 < n { u[idx + 1] - c } else { -c };
                let dy = if row + 1 < n { u[idx + n] - c } else { -c };
                tv += dx.hypot(dy);
            }
        }
        println!("w {:.2} tv {:.6} (shift {:.4})", w, p.h * tv, shift);
    }
}
