use yieldgeom::geom::{ArcEdge, ArcPath, Orientation, Point, ShapePrimitive};
use yieldgeom::morph::close_r;

fn main() {
    let delta = 0.4_f64;
    let p = 1.0_f64;
    let r = 0.5_f64;
    let h = ((r + delta).powi(2) - 0.25 * p * p).sqrt();
    println!("h = {h}");
    let ca = Point::ORIGIN;
    let cb = Point::new(p, 0.0);
    let o_plus = Point::new(0.5 * p, h);
    let o_minus = Point::new(0.5 * p, -h);
    let lam = delta / (delta + r);
    let t_a_plus = ca.add(o_plus.sub(ca).scale(lam));
    let t_a_minus = ca.add(o_minus.sub(ca).scale(lam));
    let t_b_plus = cb.add(o_plus.sub(cb).scale(lam));
    let t_b_minus = cb.add(o_minus.sub(cb).scale(lam));
    let lp = ArcPath::new(vec![
        ArcEdge::arc(t_a_minus, t_a_plus, ca, Orientation::Ccw),
        ArcEdge::arc(t_a_plus, t_b_plus, o_plus, Orientation::Ccw),
        ArcEdge::arc(t_b_plus, t_b_minus, cb, Orientation::Ccw),
        ArcEdge::arc(t_b_minus, t_a_minus, o_minus, Orientation::Ccw),
    ]);
    for (i, e) in lp.edges.iter().enumerate() {
        if let ArcEdge::Arc(a) = e {
            println!("edge {i}: sweep {:.4} len {:.4}", a.sweep(), a.length());
        }
    }
    println!("bridge loop signed area = {}", lp.signed_area());

    let parts = vec![
        ShapePrimitive::disk(ca, delta),
        ShapePrimitive::disk(cb, delta),
    ];
    let c = close_r(&parts, r).unwrap();
    println!("assembled loops: {}", c.region.loops.len());
    for l in &c.region.loops {
        println!("  loop edges {} signed area {:.6} len {:.6}", l.edges.len(), l.signed_area(), l.length());
    }
    println!("region area {:.6} per {:.6}", c.region.area(), c.region.perimeter());
    println!("expect area {:.6}", 2.0 * std::f64::consts::PI * delta * delta + c.bridges[0].d_area);
    println!("d_area {:.6} d_per {:.6}", c.bridges[0].d_area, c.bridges[0].d_per);
}
