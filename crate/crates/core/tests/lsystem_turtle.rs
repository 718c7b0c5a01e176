//! The turtle reading of the exported rules against the digit walks.

use arrowhead_core::bijection::w_to_s;
use arrowhead_core::curves::{er_expand, nr_expand};
use arrowhead_core::enumerate::{collect, EnumerateOptions};
use arrowhead_core::lattice::tile_centroid;
use arrowhead_core::lsystem::{er_rules, expand_and_walk, interpret, mirror, nr_rules, Symbol};
use arrowhead_core::PathKind;

fn coincide(a: &[(f64, f64)], b: &[(f64, f64)]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(p, q)| (p.0 - q.0).abs() < 1e-9 && (p.1 - q.1).abs() < 1e-9)
}

#[test]
fn er_strokes_alternate_letter_by_heading_parity() {
    for n in 2..=5 {
        for w in collect(PathKind::W, n, &EnumerateOptions::default()).unwrap() {
            let rules = er_rules(&w).unwrap();
            let word = rules.system().expand(2);
            for stroke in interpret(&word, 60.0, (0.0, 0.0)).strokes {
                let even = stroke.heading % 2 == 0;
                assert_eq!(stroke.symbol == Symbol::A, even, "w={w}");
            }
        }
    }
}

#[test]
fn b_rule_is_the_mirrored_a_rule() {
    for w in collect(PathKind::W, 5, &EnumerateOptions::default()).unwrap() {
        let er = er_rules(&w).unwrap();
        let sys = er.system();
        assert_eq!(mirror(sys.production(Symbol::A).unwrap()), sys.production(Symbol::B).unwrap());
        let nr = nr_rules(&er);
        assert_eq!(mirror(nr.production(Symbol::X).unwrap()), nr.production(Symbol::Y).unwrap());
    }
}

#[test]
fn order_four_turtles_match_walks() {
    for w in collect(PathKind::W, 4, &EnumerateOptions::default()).unwrap() {
        let er = er_rules(&w).unwrap();
        let s = w_to_s(&w).unwrap();
        for k in 0..=2 {
            assert!(coincide(&expand_and_walk(er.system(), k), &er_expand(&s, k).unwrap().polyline()));
            let origin = tile_centroid(arrowhead_core::Tile::new(0, 0));
            let shifted: Vec<(f64, f64)> = expand_and_walk(&nr_rules(&er), k)
                .into_iter()
                .map(|(x, y)| (x + origin.0, y + origin.1))
                .collect();
            assert!(coincide(&shifted, &nr_expand(&w, k).unwrap().polyline()));
        }
    }
}
