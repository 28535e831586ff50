use std::time::Instant;
use yieldgeom::geom::{Point, ShapePrimitive};
use yieldgeom::sceneio::Scene;
use yieldgeom::tvgrid::{estimate_yc, solve_scene};

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
    for n in [128usize, 256, 512] {
        let t0 = Instant::now();
        let (p, out) = solve_scene(&scene, n, 200_000, 1e-7).unwrap();
        let yc = estimate_yc(&p, &out);
        println!(
            "n {:4} iters {:6} conv {} {:6.1}s tv {:.5} ({:+.2}%) yc {:.5} ({:+.2}%)",
            n,
            out.iterations,
            out.converged,
            t0.elapsed().as_secs_f64(),
            out.tv_value,
            100.0 * (out.tv_value / s_exact - 1.0),
            yc,
            100.0 * (yc / yc_exact - 1.0)
        );
    }
}
