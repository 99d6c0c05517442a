//! Minimal SVG writer. Coordinates are printed with two decimals so output
//! is byte-stable.

use std::fmt::Write;

pub struct Svg {
    buf: String,
}

impl Svg {
    pub fn new(width: f64, height: f64) -> Self {
        let mut buf = String::new();
        let _ = writeln!(
            buf,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
        );
        let _ = writeln!(buf, r#"<rect x="0" y="0" width="{width:.0}" height="{height:.0}" fill="white"/>"#);
        Svg { buf }
    }

    pub fn polygon(&mut self, points: &[(f64, f64)], stroke: &str, dashed: bool) {
        let pts: Vec<String> = points.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let dash = if dashed { r#" stroke-dasharray="4 3""# } else { "" };
        let _ = writeln!(
            self.buf,
            r#"<polygon points="{}" fill="none" stroke="{stroke}" stroke-width="1"{dash}/>"#,
            pts.join(" ")
        );
    }

    pub fn text(&mut self, x: f64, y: f64, size: f64, anchor: &str, body: &str) {
        let _ = writeln!(
            self.buf,
            r#"<text x="{x:.2}" y="{y:.2}" font-family="sans-serif" font-size="{size:.0}" text-anchor="{anchor}">{body}</text>"#
        );
    }

    pub fn begin_group(&mut self, fill: &str, opacity: f64) {
        let _ = writeln!(self.buf, r#"<g fill="{fill}" fill-opacity="{opacity:.2}">"#);
    }

    pub fn end_group(&mut self) {
        self.buf.push_str("</g>\n");
    }

    pub fn dot(&mut self, x: f64, y: f64, r: f64) {
        let _ = writeln!(self.buf, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r:.1}"/>"#);
    }

    pub fn finish(mut self) -> String {
        self.buf.push_str("</svg>\n");
        self.buf
    }
}
