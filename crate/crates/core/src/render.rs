//! SVG output for curves and gasket approximations.
//!
//! Input coordinates are Cartesian lattice units (one tile side = 1). The
//! y axis is flipped so the triangle stands on its base.

use crate::curves::{GasketApproximation, DEFAULT_TILE_CAP};
use crate::error::{Error, Result};
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub stroke_width: f64,
    /// Pixels per lattice unit.
    pub scale: f64,
    pub margin: f64,
    pub tile_fill: String,
    pub curve_color: String,
    pub tile_cap: u128,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            stroke_width: 2.0,
            scale: 40.0,
            margin: 10.0,
            tile_fill: "#999999".into(),
            curve_color: "#000000".into(),
            tile_cap: DEFAULT_TILE_CAP,
        }
    }
}

impl RenderSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::InvalidRenderSpec(format!("scale must be positive, got {}", self.scale)));
        }
        if !(self.margin >= 0.0 && self.margin.is_finite()) {
            return Err(Error::InvalidRenderSpec(format!("margin must be non-negative, got {}", self.margin)));
        }
        if !(self.stroke_width >= 0.0 && self.stroke_width.is_finite()) {
            return Err(Error::InvalidRenderSpec("stroke width must be non-negative".into()));
        }
        Ok(())
    }
}

struct Frame {
    min_x: f64,
    max_y: f64,
    width: f64,
    height: f64,
    scale: f64,
    margin: f64,
}

impl Frame {
    fn fit<'a>(points: impl Iterator<Item = &'a (f64, f64)>, spec: &RenderSpec) -> Frame {
        let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
        let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for &(x, y) in points {
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        }
        Frame {
            min_x,
            max_y,
            width: (max_x - min_x) * spec.scale + 2.0 * spec.margin,
            height: (max_y - min_y) * spec.scale + 2.0 * spec.margin,
            scale: spec.scale,
            margin: spec.margin,
        }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (
            (x - self.min_x) * self.scale + self.margin,
            (self.max_y - y) * self.scale + self.margin,
        )
    }

    fn open(&self, out: &mut String) {
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            w = num(self.width),
            h = num(self.height)
        );
    }
}

/// Fixed-precision number formatting keeps output byte-stable.
fn num(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".to_string() } else { s.to_string() }
}

fn path_element(out: &mut String, frame: &Frame, polyline: &[(f64, f64)], spec: &RenderSpec) {
    let mut d = String::new();
    for (i, &p) in polyline.iter().enumerate() {
        let (x, y) = frame.map(p);
        let _ = write!(d, "{}{} {}", if i == 0 { "M" } else { " L" }, num(x), num(y));
    }
    let _ = writeln!(
        out,
        r#"  <path d="{d}" fill="none" stroke="{}" stroke-width="{}" stroke-linejoin="round" stroke-linecap="round"/>"#,
        spec.curve_color,
        num(spec.stroke_width)
    );
}

pub fn render_curve(polyline: &[(f64, f64)], spec: &RenderSpec) -> Result<String> {
    spec.validate()?;
    if polyline.is_empty() {
        return Err(Error::EmptyPolyline);
    }
    let frame = Frame::fit(polyline.iter(), spec);
    let mut out = String::new();
    frame.open(&mut out);
    path_element(&mut out, &frame, polyline, spec);
    out.push_str("</svg>\n");
    Ok(out)
}

/// One filled triangle per dark tile, with an optional curve drawn on top.
pub fn render_gasket(g: &GasketApproximation, overlay: Option<&[(f64, f64)]>, spec: &RenderSpec) -> Result<String> {
    spec.validate()?;
    if g.len() as u128 > spec.tile_cap {
        return Err(Error::SizeGuard { tiles: g.len() as u128, cap: spec.tile_cap });
    }
    if overlay.is_some_and(|p| p.is_empty()) {
        return Err(Error::EmptyPolyline);
    }
    let side = g.side() as f64;
    let hull = [(0.0, 0.0), (side, 0.0), (side / 2.0, side * crate::lattice::SQRT_3 / 2.0)];
    let frame = Frame::fit(hull.iter().chain(overlay.unwrap_or(&[]).iter()), spec);
    let mut out = String::new();
    frame.open(&mut out);
    let _ = writeln!(out, r#"  <g fill="{}" stroke="none">"#, spec.tile_fill);
    for t in g.tiles() {
        let mut pts = String::new();
        for (i, c) in t.corners().iter().enumerate() {
            let (x, y) = frame.map(c.to_cartesian());
            let _ = write!(pts, "{}{},{}", if i == 0 { "" } else { " " }, num(x), num(y));
        }
        let _ = writeln!(out, r#"    <polygon points="{pts}"/>"#);
    }
    out.push_str("  </g>\n");
    if let Some(polyline) = overlay {
        path_element(&mut out, &frame, polyline, spec);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{er_expand, gasket_tiles};
    use crate::paths::{PathKind, PathString};

    fn arrowhead(k: u32) -> Vec<(f64, f64)> {
        let g = PathString::parse(PathKind::S, 2, "105").unwrap();
        er_expand(&g, k).unwrap().polyline()
    }

    fn path_vertices(svg: &str) -> usize {
        let d = svg.split(" d=\"").nth(1).unwrap().split('"').next().unwrap();
        d.matches(['M', 'L']).count()
    }

    #[test]
    fn curve_document() {
        let spec = RenderSpec { scale: 100.0, ..RenderSpec::default() };
        let svg = render_curve(&arrowhead(1), &spec).unwrap();
        assert!(svg.starts_with("<?xml"));
        assert_eq!(svg.matches("<path").count(), 1);
        assert_eq!(path_vertices(&svg), 4);
        assert!(svg.contains(r#"viewBox="0 0 220 106.6025""#), "{svg}");
        assert_eq!(path_vertices(&render_curve(&arrowhead(3), &spec).unwrap()), 28);
    }

    #[test]
    fn base_sits_at_the_bottom() {
        let spec = RenderSpec { scale: 10.0, margin: 0.0, ..RenderSpec::default() };
        let svg = render_curve(&[(0.0, 0.0), (1.0, 0.0), (0.5, 0.5)], &spec).unwrap();
        assert!(svg.contains("M0 5 L10 5 L5 0"), "{svg}");
    }

    #[test]
    fn empty_polyline() {
        assert_eq!(render_curve(&[], &RenderSpec::default()), Err(Error::EmptyPolyline));
    }

    #[test]
    fn bad_spec() {
        let spec = RenderSpec { scale: 0.0, ..RenderSpec::default() };
        assert!(matches!(render_curve(&arrowhead(1), &spec), Err(Error::InvalidRenderSpec(_))));
    }

    #[test]
    fn gasket_documents() {
        let spec = RenderSpec::default();
        let svg = render_gasket(&gasket_tiles(2, 1).unwrap(), None, &spec).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 3);
        let svg = render_gasket(&gasket_tiles(4, 2).unwrap(), None, &spec).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 100);
        let curve = arrowhead(2);
        let svg = render_gasket(&gasket_tiles(2, 2).unwrap(), Some(&curve), &spec).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 9);
        assert_eq!(path_vertices(&svg), 10);
    }

    #[test]
    fn gasket_size_guard() {
        let spec = RenderSpec { tile_cap: 8, ..RenderSpec::default() };
        assert!(matches!(
            render_gasket(&gasket_tiles(2, 2).unwrap(), None, &spec),
            Err(Error::SizeGuard { tiles: 9, cap: 8 })
        ));
    }

    #[test]
    fn deterministic_output() {
        let spec = RenderSpec::default();
        let a = render_gasket(&gasket_tiles(3, 2).unwrap(), Some(&arrowhead(2)), &spec).unwrap();
        let b = render_gasket(&gasket_tiles(3, 2).unwrap(), Some(&arrowhead(2)), &spec).unwrap();
        assert_eq!(a, b);
    }
}
