//! Minimal SVG output: polygon outlines and labelled points.
//!
//! Conventions follow the usual figure style for these configurations:
//! the body being positioned is drawn solid, reference bodies dotted.

use std::fmt::Write;

use crate::polygon::{ConvexPolygon, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stroke {
    Solid,
    Dotted,
}

#[derive(Debug, Clone)]
pub struct Layer {
    pub label: String,
    pub polygon: ConvexPolygon,
    pub stroke: Stroke,
}

impl Layer {
    pub fn solid(label: &str, polygon: &ConvexPolygon) -> Self {
        Layer {
            label: label.to_string(),
            polygon: polygon.clone(),
            stroke: Stroke::Solid,
        }
    }

    pub fn dotted(label: &str, polygon: &ConvexPolygon) -> Self {
        Layer {
            label: label.to_string(),
            polygon: polygon.clone(),
            stroke: Stroke::Dotted,
        }
    }
}

const SIZE: f64 = 640.0;
const PAD: f64 = 0.08;

/// Renders layers back to front, then the labelled points.
pub fn render(layers: &[Layer], points: &[(String, Point)]) -> String {
    let all = layers
        .iter()
        .flat_map(|l| l.polygon.vertices().iter().copied())
        .chain(points.iter().map(|p| p.1));
    let (mut lo, mut hi) = (
        Point::new(f64::INFINITY, f64::INFINITY),
        Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    );
    for p in all {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    if !lo.x.is_finite() {
        lo = Point::new(-1.0, -1.0);
        hi = Point::new(1.0, 1.0);
    }
    let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
    let scale = SIZE * (1.0 - 2.0 * PAD) / span;
    let map = |p: Point| {
        (
            (p.x - lo.x) * scale + SIZE * PAD,
            SIZE - ((p.y - lo.y) * scale + SIZE * PAD),
        )
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    for layer in layers {
        let pts: Vec<String> = layer
            .polygon
            .vertices()
            .iter()
            .map(|&p| {
                let (x, y) = map(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let dash = match layer.stroke {
            Stroke::Solid => "",
            Stroke::Dotted => r#" stroke-dasharray="2,4""#,
        };
        let _ = writeln!(
            s,
            r#"  <polygon class="{}" data-label="{}" points="{}" fill="none" stroke="black" stroke-width="1.5"{dash}/>"#,
            match layer.stroke {
                Stroke::Solid => "solid",
                Stroke::Dotted => "dotted",
            },
            escape(&layer.label),
            pts.join(" ")
        );
    }
    for (label, p) in points {
        let (x, y) = map(*p);
        let _ = writeln!(
            s,
            r#"  <circle cx="{x:.3}" cy="{y:.3}" r="3" fill="black"/>"#
        );
        let _ = writeln!(
            s,
            r#"  <text x="{:.3}" y="{:.3}" font-size="14" font-family="serif">{}</text>"#,
            x + 5.0,
            y - 5.0,
            escape(label)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}
