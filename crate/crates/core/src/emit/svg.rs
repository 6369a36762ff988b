//! SVG rendering of laminations on the unit circle.
//!
//! Angle `t` is drawn at `(cos 2πt, sin 2πt)`, counterclockwise on screen.
//! Only this module uses floating point; the model stays exact.

use std::f64::consts::TAU;
use std::fmt::Write;

use crate::circle::CircleAngle;
use crate::error::{Error, Result};
use crate::lamination::{Lamination, Leaf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderOptions {
    /// Width and height in pixels.
    pub size: u32,
    /// Draw leaves as arcs orthogonal to the circle instead of chords.
    pub geodesic: bool,
    /// Print each vertex's angle next to it.
    pub labels: bool,
    /// Decimal places for coordinates.
    pub precision: usize,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            size: 512,
            geodesic: false,
            labels: false,
            precision: 6,
        }
    }
}

impl RenderOptions {
    pub fn validate(&self) -> Result<()> {
        if self.size == 0 {
            return Err(Error::SchemaError("render size must be positive".into()));
        }
        if !(1..=12).contains(&self.precision) {
            return Err(Error::SchemaError(format!("precision {} outside 1..=12", self.precision)));
        }
        Ok(())
    }
}

struct Canvas {
    center: f64,
    radius: f64,
    precision: usize,
}

impl Canvas {
    fn num(&self, v: f64) -> String {
        let s = format!("{:.*}", self.precision, v);
        if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
            s.trim_start_matches('-').to_string()
        } else {
            s
        }
    }

    fn at(&self, t: &CircleAngle) -> (f64, f64) {
        let theta = TAU * t.to_f64();
        (self.center + self.radius * theta.cos(), self.center - self.radius * theta.sin())
    }

    fn chord(&self, leaf: &Leaf) -> String {
        let (a, b) = leaf.endpoints();
        let (x1, y1) = self.at(a);
        let (x2, y2) = self.at(b);
        format!("M {} {} L {} {}", self.num(x1), self.num(y1), self.num(x2), self.num(y2))
    }

    fn geodesic(&self, leaf: &Leaf) -> String {
        let (a, b) = leaf.endpoints();
        if is_diameter(a, b) {
            return self.chord(leaf);
        }
        let (x1, y1) = self.at(a);
        let (x2, y2) = self.at(b);
        let mut span = TAU * (b.to_f64() - a.to_f64());
        let mut start = TAU * a.to_f64();
        if span > std::f64::consts::PI {
            start += span;
            span = TAU - span;
        }
        // Circle orthogonal to the boundary through both endpoints.
        let half = span / 2.0;
        let mid = start + half;
        let dist = self.radius / half.cos();
        let (cx, cy) = (self.center + dist * mid.cos(), self.center - dist * mid.sin());
        let arc_radius = self.radius * half.tan();
        let cross = (x1 - cx) * (y2 - cy) - (y1 - cy) * (x2 - cx);
        let sweep = u8::from(cross > 0.0);
        format!(
            "M {} {} A {} {} 0 0 {} {} {}",
            self.num(x1),
            self.num(y1),
            self.num(arc_radius),
            self.num(arc_radius),
            sweep,
            self.num(x2),
            self.num(y2)
        )
    }
}

/// Exactly antipodal endpoints, `b - a = 1/2`.
fn is_diameter(a: &CircleAngle, b: &CircleAngle) -> bool {
    let lhs = (b.numerator() * a.denominator() - a.numerator() * b.denominator()) * 2u32;
    lhs == a.denominator() * b.denominator()
}

/// Renders the lamination: boundary circle, one path per leaf, vertex dots.
pub fn to_svg(lam: &Lamination, opts: &RenderOptions) -> String {
    let size = opts.size as f64;
    let margin = if opts.labels { 0.15 } else { 0.05 };
    let canvas = Canvas {
        center: size / 2.0,
        radius: size / 2.0 * (1.0 - margin),
        precision: opts.precision,
    };
    let c = canvas.num(canvas.center);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">",
        opts.size
    );
    let _ = writeln!(
        out,
        "  <circle cx=\"{c}\" cy=\"{c}\" r=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>",
        canvas.num(canvas.radius)
    );
    let leaves = lam.leaves();
    if !leaves.is_empty() {
        out.push_str("  <g fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\">\n");
        for leaf in &leaves {
            let d = if opts.geodesic {
                canvas.geodesic(leaf)
            } else {
                canvas.chord(leaf)
            };
            let _ = writeln!(out, "    <path d=\"{d}\"/>");
        }
        out.push_str("  </g>\n");
    }
    let mut vertices: Vec<&CircleAngle> = lam.polygons().iter().flat_map(|p| p.vertices()).collect();
    vertices.sort();
    vertices.dedup();
    if !vertices.is_empty() {
        let dot = canvas.num((size / 256.0).max(1.0));
        out.push_str("  <g fill=\"black\">\n");
        for v in &vertices {
            let (x, y) = canvas.at(v);
            let _ = writeln!(out, "    <circle cx=\"{}\" cy=\"{}\" r=\"{dot}\"/>", canvas.num(x), canvas.num(y));
        }
        out.push_str("  </g>\n");
        if opts.labels {
            let font = (size / 64.0).max(6.0);
            let _ = writeln!(out, "  <g font-family=\"monospace\" font-size=\"{}\" text-anchor=\"middle\">", canvas.num(font));
            for v in &vertices {
                let theta = TAU * v.to_f64();
                let r = canvas.radius + font * 2.0;
                let (x, y) = (canvas.center + r * theta.cos(), canvas.center - r * theta.sin());
                let _ = writeln!(out, "    <text x=\"{}\" y=\"{}\">{v}</text>", canvas.num(x), canvas.num(y));
            }
            out.push_str("  </g>\n");
        }
    }
    out.push_str("</svg>\n");
    out
}
