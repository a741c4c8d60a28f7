//! Node scatter plots.

use mincuba::Domain;
use std::fmt::Write;

pub fn render(domain: Domain, nodes: &[[f64; 3]], size: u32) -> String {
    let s = size as f64;
    let margin = 0.05 * s;
    let (xmin, xmax, ymin, ymax): (f64, f64, f64, f64) = match domain {
        Domain::Square => (-1.0, 1.0, -1.0, 1.0),
        Domain::Biangle => (-2.0, 2.0, -1.0, 1.0),
    };
    let scale = (s - 2.0 * margin) / (xmax - xmin).max(ymax - ymin);
    let ox = 0.5 * s - 0.5 * (xmin + xmax) * scale;
    let oy = 0.5 * s + 0.5 * (ymin + ymax) * scale;
    let px = |x: f64, y: f64| (ox + x * scale, oy - y * scale);

    let mut min_d = f64::INFINITY;
    for (i, a) in nodes.iter().enumerate() {
        for b in &nodes[i + 1..] {
            min_d = min_d.min((a[0] - b[0]).hypot(a[1] - b[1]));
        }
    }
    let radius = if min_d.is_finite() { (0.4 * min_d * scale).clamp(0.5, s / 60.0) } else { s / 60.0 };

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#);
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>"#);
    let f = |v: f64| format!("{v:.3}");
    let outline = match domain {
        Domain::Square => {
            let (x0, y0) = px(-1.0, 1.0);
            let (x1, y1) = px(1.0, -1.0);
            format!(r#"<rect x="{}" y="{}" width="{}" height="{}""#, f(x0), f(y0), f(x1 - x0), f(y1 - y0))
        }
        Domain::Biangle => {
            // two edges meeting at (0,-1) and the parabola u2 = u1²/4 back
            let (ax, ay) = px(-2.0, 1.0);
            let (bx, by) = px(0.0, -1.0);
            let (cx, cy) = px(2.0, 1.0);
            format!(
                r#"<path d="M {} {} L {} {} L {} {} Q {} {} {} {} Z""#,
                f(ax),
                f(ay),
                f(bx),
                f(by),
                f(cx),
                f(cy),
                f(bx),
                f(by),
                f(ax),
                f(ay)
            )
        }
    };
    let _ = writeln!(out, r#"{outline} fill="none" stroke="black" stroke-width="1"/>"#);
    for n in nodes {
        let (x, y) = px(n[0], n[1]);
        let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="{}" fill="black"/>"#, f(x), f(y), f(radius));
    }
    out.push_str("</svg>\n");
    out
}
