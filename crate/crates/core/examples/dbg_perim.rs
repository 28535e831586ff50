// Perimeter response of discrete TV schemes on a sharp rasterized disk.
fn main() {
    for n in [256usize, 512, 1024] {
        let h = 3.0 / n as f64;
        let r0 = 1.0;
        let u: Vec<f64> = (0..n * n)
            .map(|idx| {
                let (row, col) = (idx / n, idx % n);
                let x = -1.5 + (col as f64 + 0.5) * h;
                let y = -1.5 + (row as f64 + 0.5) * h;
                if x * x + y * y <= r0 * r0 { 1.0 } else { 0.0 }
            })
            .collect();
        let at = |r: usize, c: usize| -> f64 {
            if r < n && c < n { u[r * n + c] } else { 0.0 }
        };
        // plain forward
        let mut tv_f = 0.0;
        // corner-averaged
        let mut tv_c = 0.0;
        for row in 0..n {
            for col in 0..n {
                let c0 = at(row, col);
                let dxf = at(row, col + 1) - c0;
                let dyf = at(row + 1, col) - c0;
                tv_f += dxf.hypot(dyf);
                let u00 = c0;
                let u01 = at(row, col + 1);
                let u10 = at(row + 1, col);
                let u11 = at(row + 1, col + 1);
                let dx = 0.5 * (u01 - u00 + u11 - u10);
                let dy = 0.5 * (u10 - u00 + u11 - u01);
                tv_c += dx.hypot(dy);
            }
        }
        let per = 2.0 * std::f64::consts::PI;
        println!(
            "n {:5} forward {:.4} ({:+.2}%)  corner {:.4} ({:+.2}%)",
            n,
            h * tv_f,
            100.0 * (h * tv_f / per - 1.0),
            h * tv_c,
            100.0 * (h * tv_c / per - 1.0)
        );
    }
}
