//! CSV and SVG serialization.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{CliError, CliResult};

/// 17 significant digits, enough for every f64 to read back exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Comma-separated text with a header line, optional leading `#` comments, and LF endings.
pub fn csv_string(comments: &[String], header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&x| fmt_f64(x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 60.0;
const LEGEND_WIDTH: f64 = 150.0;
const PALETTE: [&str; 10] = [
    "#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
];

pub struct Polyline {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// One polyline per series on a fixed 800×600 canvas. Series sharing a label share a colour
/// and a legend entry.
pub fn svg_plot(title: &str, axes: (&str, &str), lines: &[Polyline]) -> String {
    let pts = || lines.iter().flat_map(|l| l.points.iter()).filter(|p| p.0.is_finite() && p.1.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts() {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !(x0 <= x1) {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    let pad = |a: f64, b: f64| if b - a > 0.0 { (a, b) } else { (a - 0.5, b + 0.5) };
    let ((x0, x1), (y0, y1)) = (pad(x0, x1), pad(y0, y1));
    let plot_w = WIDTH - 2.0 * MARGIN - LEGEND_WIDTH;
    let plot_h = HEIGHT - 2.0 * MARGIN;
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * plot_w;
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * plot_h;

    let mut labels: Vec<&str> = Vec::new();
    for l in lines {
        if !labels.contains(&l.label.as_str()) {
            labels.push(&l.label);
        }
    }
    let colour = |label: &str| PALETTE[labels.iter().position(|&l| l == label).unwrap_or(0) % PALETTE.len()];

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="30" font-size="18" text-anchor="middle">{}</text>"#, WIDTH / 2.0, escape(title));
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="14" text-anchor="middle">{}</text>"#,
        MARGIN + plot_w / 2.0,
        HEIGHT - 15.0,
        escape(axes.0)
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{}" font-size="14" text-anchor="middle" transform="rotate(-90 20 {})">{}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(axes.1)
    );
    for (v, anchor_x, anchor_y, anchor) in [
        (x0, sx(x0), HEIGHT - MARGIN + 18.0, "start"),
        (x1, sx(x1), HEIGHT - MARGIN + 18.0, "end"),
    ] {
        let _ = writeln!(s, r#"<text x="{anchor_x:.2}" y="{anchor_y:.2}" font-size="11" text-anchor="{anchor}">{v:.4}</text>"#);
    }
    for (v, y) in [(y0, sy(y0)), (y1, sy(y1))] {
        let _ = writeln!(s, r#"<text x="{:.2}" y="{y:.2}" font-size="11" text-anchor="end">{v:.4}</text>"#, MARGIN - 4.0);
    }
    for l in lines {
        let coords: Vec<String> = l
            .points
            .iter()
            .filter(|p| p.0.is_finite() && p.1.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>"#,
            colour(&l.label),
            coords.join(" ")
        );
    }
    let lx = WIDTH - LEGEND_WIDTH - MARGIN / 2.0;
    for (i, label) in labels.iter().enumerate() {
        let y = MARGIN + 20.0 * i as f64 + 10.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{y}" x2="{}" y2="{y}" stroke="{}" stroke-width="3"/>"#,
            lx + 20.0,
            colour(label)
        );
        let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="12">{}</text>"#, lx + 26.0, y + 4.0, escape(label));
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_round_trip_through_text() {
        for x in [1.0 / 3.0, std::f64::consts::PI, 1e-300, -2.5e17, 0.1 + 0.2] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn csv_layout() {
        let s = csv_string(&["limit=0".into()], &["s", "ell"], &[vec![1.0, 2.0]]);
        assert_eq!(s, "# limit=0\ns,ell\n1.0000000000000000e0,2.0000000000000000e0\n");
    }

    #[test]
    fn svg_has_canvas_lines_and_legend() {
        let lines = [
            Polyline { label: "alpha".into(), points: vec![(0.0, 0.0), (1.0, 1.0)] },
            Polyline { label: "alpha".into(), points: vec![(0.0, 1.0), (1.0, 0.0)] },
            Polyline { label: "beta".into(), points: vec![(0.5, 0.5)] },
        ];
        let s = svg_plot("t", ("x", "y"), &lines);
        assert!(s.contains(r#"width="800" height="600""#));
        assert_eq!(s.matches("<polyline").count(), 3);
        assert_eq!(s.matches("<line ").count(), 2);
        assert!(s.contains(">beta</text>"));
    }
}
