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
    for n in [64, 96, 128] {
        let p = rasterize(&scene, n).unwrap();
        for iters in [100_000, 400_000] {
            let out = minimize_tv(&p, iters, 0.0).unwrap();
            println!("n {:4} iters {:7} tv {:.6}", n, out.iterations, out.tv_value);
        }
    }
}
