use yieldgeom::geom::{Point, ShapePrimitive};
use yieldgeom::sceneio::Scene;
use yieldgeom::tvgrid::{estimate_yc, minimize_tv, rasterize};

fn main() {
    let scene = Scene::new(
        ShapePrimitive::disk(Point::ORIGIN, 2.0),
        vec![ShapePrimitive::disk(
            Point::ORIGIN,
            1.0 / std::f64::consts::PI.sqrt(),
        )],
    );
    let s_exact = 4.9378489;
    let yc_exact = 0.2025173;
    for n in [256usize, 512] {
        let p = rasterize(&scene, n).unwrap();
        let out = minimize_tv(&p, 200_000, 1e-8).unwrap();
        let yc = estimate_yc(&p, &out);
        println!(
            "n {:4} iters {:6} conv {} tv {:.5} ({:+.2}%) yc {:.5} ({:+.2}%)",
            n,
            out.iterations,
            out.converged,
            out.tv_value,
            100.0 * (out.tv_value / s_exact - 1.0),
            yc,
            100.0 * (yc / yc_exact - 1.0)
        );
    }
}
