//! SVG documents parse as XML and overlays line up with the tiles.

use arrowhead_core::bijection::w_to_s;
use arrowhead_core::curves::{er_expand, gasket_tiles};
use arrowhead_core::enumerate::{collect, EnumerateOptions};
use arrowhead_core::render::{render_curve, render_gasket, RenderSpec};
use arrowhead_core::PathKind;

fn parse_numbers(list: &str) -> Vec<(f64, f64)> {
    list.split([' ', ','])
        .filter(|s| !s.is_empty())
        .map(|s| s.trim_start_matches(['M', 'L']))
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().unwrap())
        .collect::<Vec<_>>()
        .chunks(2)
        .map(|c| (c[0], c[1]))
        .collect()
}

#[test]
fn documents_are_well_formed_xml() {
    let spec = RenderSpec::default();
    let s = collect(PathKind::S, 3, &EnumerateOptions::default()).unwrap();
    let curve = er_expand(&s[0], 2).unwrap().polyline();
    let docs = [
        render_curve(&curve, &spec).unwrap(),
        render_gasket(&gasket_tiles(3, 2).unwrap(), Some(&curve), &spec).unwrap(),
    ];
    for doc in docs {
        let parsed = roxmltree::Document::parse(&doc).unwrap();
        assert_eq!(parsed.root_element().tag_name().name(), "svg");
    }
}

/// Every overlay segment must be a side of exactly one rendered triangle.
#[test]
fn er_overlay_segments_lie_on_tile_sides() {
    let spec = RenderSpec { scale: 20.0, ..RenderSpec::default() };
    let tol = 1e-9 * spec.scale + 1e-4; // output carries 4 decimals
    for w in collect(PathKind::W, 3, &EnumerateOptions::default()).unwrap() {
        let s = w_to_s(&w).unwrap();
        let curve = er_expand(&s, 2).unwrap().polyline();
        let svg = render_gasket(&gasket_tiles(3, 2).unwrap(), Some(&curve), &spec).unwrap();
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let triangles: Vec<Vec<(f64, f64)>> = doc
            .descendants()
            .filter(|n| n.has_tag_name("polygon"))
            .map(|n| parse_numbers(n.attribute("points").unwrap()))
            .collect();
        let path = doc.descendants().find(|n| n.has_tag_name("path")).unwrap();
        let vertices = parse_numbers(path.attribute("d").unwrap());
        let near = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0).abs() < tol && (a.1 - b.1).abs() < tol;
        for seg in vertices.windows(2) {
            let owners = triangles
                .iter()
                .filter(|tri| {
                    (0..3).any(|i| {
                        let (p, q) = (tri[i], tri[(i + 1) % 3]);
                        (near(p, seg[0]) && near(q, seg[1])) || (near(p, seg[1]) && near(q, seg[0]))
                    })
                })
                .count();
            assert_eq!(owners, 1, "segment {seg:?} of {s}");
        }
    }
}
