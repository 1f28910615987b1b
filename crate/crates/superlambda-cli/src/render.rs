//! SVG and TikZ drawings of snake graphs and their covers.

use std::fmt::Write;

use superlambda::dimers::DoubleDimerCover;
use superlambda::snake::{Layout, SnakeGraph};
use superlambda::superalg::GenNames;

const UNIT: f64 = 60.0;
const MARGIN: f64 = 30.0;

struct Frame {
    width: f64,
    height: f64,
    max_y: i32,
}

fn frame(l: &Layout) -> Frame {
    let max_x = l.points.iter().map(|p| p.0).max().unwrap_or(0);
    let max_y = l.points.iter().map(|p| p.1).max().unwrap_or(0);
    Frame { width: max_x as f64 * UNIT + 2.0 * MARGIN, height: max_y as f64 * UNIT + 2.0 * MARGIN, max_y }
}

fn px(f: &Frame, x: f64, y: f64) -> (f64, f64) {
    (MARGIN + x * UNIT, MARGIN + (f.max_y as f64 - y) * UNIT)
}

/// Single dimers dashed, double dimers solid and thick, corner labels in
/// the bottom-left and top-right of each tile.
pub fn svg(g: &SnakeGraph, cover: Option<&DoubleDimerCover>, names: &dyn GenNames) -> String {
    let l = g.layout();
    let f = frame(&l);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="0 0 {:.0} {:.0}" font-family="serif" font-size="11">"#,
        f.width, f.height, f.width, f.height
    );
    for (e, seg) in l.segments.iter().enumerate() {
        let (x1, y1) = px(&f, seg.start.0 as f64, seg.start.1 as f64);
        let end = seg.end();
        let (x2, y2) = px(&f, end.0 as f64, end.1 as f64);
        let m = cover.map_or(0, |c| c.get(e));
        let style = match m {
            2 => r##"stroke="#1f4fb4" stroke-width="4""##,
            1 => r##"stroke="#d9730d" stroke-width="3" stroke-dasharray="6,4""##,
            _ => r##"stroke="#555" stroke-width="1""##,
        };
        let _ = writeln!(s, r#"  <line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" {style}/>"#);
        let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
        let (dx, dy) = if seg.horizontal { (0.0, -4.0) } else { (4.0, 4.0) };
        let _ = writeln!(
            s,
            r#"  <text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            mx + dx,
            my + dy,
            escape(&names.even_name(l.labels[e]))
        );
    }
    for (t, o) in g.tiles.iter().zip(&l.origins) {
        let (x, y) = (o.0 as f64, o.1 as f64);
        let (cx, cy) = px(&f, x + 0.5, y + 0.5);
        let _ = writeln!(s, r##"  <text x="{cx:.1}" y="{cy:.1}" text-anchor="middle" fill="#777">{}</text>"##, escape(&names.even_name(t.diagonal)));
        let (bx, by) = px(&f, x + 0.15, y + 0.12);
        let _ = writeln!(s, r#"  <text x="{bx:.1}" y="{by:.1}" text-anchor="middle" font-size="9">{}</text>"#, escape(&names.odd_name(t.corner_bl)));
        let (tx, ty) = px(&f, x + 0.85, y + 0.8);
        let _ = writeln!(s, r#"  <text x="{tx:.1}" y="{ty:.1}" text-anchor="middle" font-size="9">{}</text>"#, escape(&names.odd_name(t.corner_tr)));
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn tex(s: &str) -> String {
    let (head, tail): (String, String) = s.chars().partition(|c| !c.is_ascii_digit());
    let head = match head.as_str() {
        "th" => "\\theta".to_string(),
        h => h.to_string(),
    };
    if tail.is_empty() {
        head
    } else {
        format!("{head}_{{{tail}}}")
    }
}

/// A `tikzpicture` with the same conventions as [`svg`].
pub fn tikz(g: &SnakeGraph, cover: Option<&DoubleDimerCover>, names: &dyn GenNames) -> String {
    let l = g.layout();
    let mut s = String::from("\\begin{tikzpicture}[scale=1.2]\n");
    for (e, seg) in l.segments.iter().enumerate() {
        let end = seg.end();
        let m = cover.map_or(0, |c| c.get(e));
        let style = match m {
            2 => "[very thick, blue]",
            1 => "[thick, dashed, orange]",
            _ => "",
        };
        let pos = if seg.horizontal { "above" } else { "right" };
        let _ = writeln!(
            s,
            "  \\draw{style} ({},{}) -- node[{pos}, font=\\tiny] {{${}$}} ({},{});",
            seg.start.0,
            seg.start.1,
            tex(&names.even_name(l.labels[e])),
            end.0,
            end.1
        );
    }
    for (t, o) in g.tiles.iter().zip(&l.origins) {
        let (x, y) = (o.0 as f64, o.1 as f64);
        let _ = writeln!(s, "  \\node[gray, font=\\tiny] at ({:.2},{:.2}) {{${}$}};", x + 0.5, y + 0.5, tex(&names.even_name(t.diagonal)));
        let _ = writeln!(s, "  \\node[font=\\tiny] at ({:.2},{:.2}) {{${}$}};", x + 0.18, y + 0.18, tex(&names.odd_name(t.corner_bl)));
        let _ = writeln!(s, "  \\node[font=\\tiny] at ({:.2},{:.2}) {{${}$}};", x + 0.82, y + 0.82, tex(&names.odd_name(t.corner_tr)));
    }
    s.push_str("\\end{tikzpicture}\n");
    s
}
