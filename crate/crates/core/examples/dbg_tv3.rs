use yieldgeom::geom::{Point, ShapePrimitive};
use yieldgeom::sceneio::Scene;
use yieldgeom::tvgrid::{rasterize, CellKind};

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
    // Rasterized continuum optimum: plateau on the annulus.
    let alpha = p.solid_cells as f64 / p.free_cells as f64;
    let u: Vec<f64> = p
        .mask
        .iter()
        .map(|k| match k {
            CellKind::Solid => 1.0,
            CellKind::Exterior => 0.0,
            CellKind::Free => -alpha,
        })
        .collect();
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
    println!("discrete TV of rasterized u_c = {:.6}", p.h * tv);
    println!("alpha = {alpha:.6} (exact {:.6})", 1.0 / (4.0 * std::f64::consts::PI - 1.0));
}
