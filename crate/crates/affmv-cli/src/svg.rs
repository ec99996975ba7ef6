//! SVG drawing of a polytope in the plane `a1 -> (1,1)`, `a0 -> (-1,1)`.

use std::fmt::Write;

use affmv::mvpoly::{LatticePoint, MVPolytope, Vertices};

const UNIT: i64 = 20;
const MARGIN: i64 = 80;

struct Frame {
    min_x: i64,
    max_y: i64,
}

impl Frame {
    fn at(&self, p: LatticePoint) -> (i64, i64) {
        let (x, y) = p.figure();
        ((x - self.min_x) * UNIT + MARGIN, (self.max_y - y) * UNIT + MARGIN)
    }
}

fn labels(v: &Vertices) -> Vec<(LatticePoint, String)> {
    let mut out: Vec<(LatticePoint, String)> = Vec::new();
    let mut add = |p: LatticePoint, s: String| {
        if !out.iter().any(|(q, _)| *q == p) {
            out.push((p, s));
        }
    };
    for (k, &p) in v.bottom.iter().enumerate() {
        add(p, format!("μ_{k}"));
    }
    for (k, &p) in v.bottom_bar.iter().enumerate() {
        add(p, format!("μ̄_{k}"));
    }
    for (k, &p) in v.top.iter().enumerate() {
        add(p, format!("μ^{k}"));
    }
    for (k, &p) in v.top_bar.iter().enumerate() {
        add(p, format!("μ̄^{k}"));
    }
    out
}

/// Renders a polytope; the outline carries its figure coordinates in `data-figure`.
pub fn render(p: &MVPolytope) -> affmv::Result<String> {
    let v = p.vertices()?;
    let outline = v.outline();
    let figs: Vec<(i64, i64)> = outline.iter().map(LatticePoint::figure).collect();
    let min_x = figs.iter().map(|f| f.0).min().unwrap_or(0);
    let max_x = figs.iter().map(|f| f.0).max().unwrap_or(0);
    let min_y = figs.iter().map(|f| f.1).min().unwrap_or(0);
    let max_y = figs.iter().map(|f| f.1).max().unwrap_or(0);
    let frame = Frame { min_x, max_y };
    let (w, h) = ((max_x - min_x) * UNIT + 2 * MARGIN, (max_y - min_y) * UNIT + 2 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    if outline.len() == 1 {
        let (x, y) = frame.at(outline[0]);
        let (fx, fy) = figs[0];
        let _ = writeln!(s, r#"  <circle class="point" cx="{x}" cy="{y}" r="4" data-figure="{fx},{fy}"/>"#);
    } else {
        let screen: Vec<String> = outline
            .iter()
            .map(|&q| {
                let (x, y) = frame.at(q);
                format!("{x},{y}")
            })
            .collect();
        let data: Vec<String> = figs.iter().map(|(x, y)| format!("{x},{y}")).collect();
        let _ = writeln!(
            s,
            r#"  <polygon points="{}" data-figure="{}" fill="none" stroke="black"/>"#,
            screen.join(" "),
            data.join(" ")
        );
    }
    for (q, name) in labels(&v) {
        let (x, y) = frame.at(q);
        let _ = writeln!(s, r#"  <circle cx="{x}" cy="{y}" r="2"/>"#);
        let _ = writeln!(s, r#"  <text x="{}" y="{}" font-size="12">{name}</text>"#, x + 4, y - 4);
    }
    // partitions sit beside the vertical delta-edges
    for (a, b, lam, dx, anchor) in [
        (v.mu_inf(), v.mu_top_inf(), &p.right.partition, 8, "start"),
        (v.mu_bar_inf(), v.mu_bar_top_inf(), &p.left.partition, -8, "end"),
    ] {
        if lam.is_empty() {
            continue;
        }
        let ((x, y0), (_, y1)) = (frame.at(a), frame.at(b));
        let _ = writeln!(
            s,
            r#"  <text class="partition" x="{}" y="{}" text-anchor="{anchor}" font-size="12">{lam}</text>"#,
            x + dx,
            (y0 + y1) / 2
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
