use yieldgeom::geom::{Point, ShapePrimitive};
use yieldgeom::sceneio::Scene;
use yieldgeom::tvgrid::{minimize_tv, rasterize};

fn main() {
    let scene = Scene::new(
        ShapePrimitive::disk(Point::ORIGIN, 2.0),
        vec![ShapePrimitive::disk(
            Point::ORIGIN,
            1.0 / std::f64::consts::PI.sqrt(),
        )],
    );
    let p = rasterize(&scene, 128).unwrap();
    for iters in [1000, 2000, 5000, 10000, 20000, 40000] {
        let out = minimize_tv(&p, iters, 0.0).unwrap();
        println!(
            "iters {:6} tv {:.8} yc {:.6}",
            out.iterations,
            out.tv_value,
            p.solid_area / out.tv_value
        );
    }
}
