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
    for iters in [50, 100, 200, 400, 800] {
        let out = minimize_tv(&p, iters, 0.0).unwrap();
        println!("iters {:6} tv {:.8}", out.iterations, out.tv_value);
    }
}
