use crate::graph::GkmGraph;
use std::fmt::Write as _;

const UNIT: i64 = 80;
const MARGIN: i64 = 60;

/// SVG drawing of a graph at integer vertex positions: a dotted lattice
/// grid, straight edges labelled by their weights, and named vertices.
/// Parallel edge pairs between the same vertices are drawn on top of each other.
pub fn render_svg(g: &GkmGraph, positions: &[[i64; 2]]) -> String {
    let xs = positions.iter().map(|p| p[0]);
    let ys = positions.iter().map(|p| p[1]);
    let (x0, x1) = (xs.clone().min().unwrap_or(0), xs.max().unwrap_or(0));
    let (y0, y1) = (ys.clone().min().unwrap_or(0), ys.max().unwrap_or(0));
    let width = (x1 - x0) * UNIT + 2 * MARGIN;
    let height = (y1 - y0) * UNIT + 2 * MARGIN;
    // Lattice y grows upwards, SVG y downwards.
    let px = |p: [i64; 2]| ((p[0] - x0) * UNIT + MARGIN, (y1 - p[1]) * UNIT + MARGIN);
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="{width}" height="{height}" fill="white"/>"#).unwrap();
    for gx in x0..=x1 {
        for gy in y0..=y1 {
            let (cx, cy) = px([gx, gy]);
            writeln!(s, r#"<circle cx="{cx}" cy="{cy}" r="1.5" fill="gray"/>"#).unwrap();
        }
    }
    for e in g.pair_representatives() {
        let (a, b) = (px(positions[g.src(e)]), px(positions[g.dst(e)]));
        writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="2"/>"#, a.0, a.1, b.0, b.1)
            .unwrap();
        let w = g.label(e);
        let (mx, my) = ((a.0 + b.0) / 2, (a.1 + b.1) / 2);
        writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" fill="navy">{} ({},{})</text>"#,
            mx + 4,
            my - 4,
            g.edge_name(e),
            w.x,
            w.y
        )
        .unwrap();
    }
    for v in 0..g.vertex_count() {
        let (cx, cy) = px(positions[v]);
        writeln!(s, r#"<circle cx="{cx}" cy="{cy}" r="5" fill="black"/>"#).unwrap();
        writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13">{}</text>"#,
            cx + 7,
            cy + 16,
            g.vertex_name(v)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}
