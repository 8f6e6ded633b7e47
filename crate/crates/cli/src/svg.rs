use std::fmt::Write;

use flipcut_core::{Edge, PointSet};

/// Draws points, optional edges and highlighted edges. The output depends
/// only on the arguments. The y axis points up, as in the input coordinates.
pub fn render_svg(ps: &PointSet, edges: &[Edge], highlighted: &[Edge]) -> String {
    let pts = ps.points();
    let (mut min_x, mut min_y, mut max_x, mut max_y) = (0i64, 0i64, 0i64, 0i64);
    if let Some(first) = pts.first() {
        (min_x, min_y, max_x, max_y) = (first.x, first.y, first.x, first.y);
    }
    for p in pts {
        min_x = min_x.min(p.x);
        max_x = max_x.max(p.x);
        min_y = min_y.min(p.y);
        max_y = max_y.max(p.y);
    }
    let span = ((max_x - min_x).max(max_y - min_y)).max(1) as f64;
    let margin = 0.05 * span;
    let radius = 0.012 * span;
    let stroke = 0.004 * span;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        min_x as f64 - margin,
        -(max_y as f64) - margin,
        (max_x - min_x) as f64 + 2.0 * margin,
        (max_y - min_y) as f64 + 2.0 * margin,
    );
    let _ = writeln!(
        out,
        "<style>.edge{{stroke:#999999;stroke-width:{stroke}}}.flip-cut{{stroke:#d62728;stroke-width:{}}}.point{{fill:#111111}}</style>",
        2.0 * stroke
    );
    let line = |out: &mut String, class: &str, e: &Edge| {
        let (a, b) = ps.segment(*e);
        let _ = writeln!(out, r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#, a.x, -a.y, b.x, -b.y);
    };
    if !edges.is_empty() {
        out.push_str("<g>\n");
        for e in edges {
            line(&mut out, "edge", e);
        }
        out.push_str("</g>\n");
    }
    if !highlighted.is_empty() {
        out.push_str("<g>\n");
        for e in highlighted {
            line(&mut out, "flip-cut", e);
        }
        out.push_str("</g>\n");
    }
    out.push_str("<g>\n");
    for p in pts {
        let _ = writeln!(out, r#"<circle class="point" cx="{}" cy="{}" r="{radius}"/>"#, p.x, -p.y);
    }
    out.push_str("</g>\n</svg>\n");
    out
}
