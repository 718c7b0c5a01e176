//! Invariants that tie the enumerated path sets to the transformation table.

use arrowhead_core::bijection::{s_to_w, transition, w_to_s, w_to_s_digits};
use arrowhead_core::enumerate::{collect, count, EnumerateOptions};
use arrowhead_core::lattice::tile_of_edge;
use arrowhead_core::paths::{check_s, s_pair_allowed, validate_w, w_pair_allowed, walk};
use arrowhead_core::{Direction, PathKind, PathString, Point};
use std::collections::BTreeSet;

fn set(kind: PathKind, n: usize) -> Vec<PathString> {
    collect(kind, n, &EnumerateOptions::default()).unwrap()
}

fn strings(paths: &[PathString]) -> BTreeSet<String> {
    paths.iter().map(|p| p.to_string()).collect()
}

#[test]
fn well_formed_h_paths_are_exactly_the_w_paths() {
    for n in 2..=6 {
        let h = set(PathKind::H, n);
        let filtered: BTreeSet<String> = h
            .iter()
            .filter(|p| validate_w(p.digits(), n))
            .map(|p| p.to_string())
            .collect();
        assert_eq!(filtered, strings(&set(PathKind::W, n)), "n={n}");
    }
}

#[test]
fn every_w_path_is_an_h_path() {
    for n in 2..=6 {
        let h = strings(&set(PathKind::H, n));
        for w in set(PathKind::W, n) {
            assert!(h.contains(&w.to_string()));
            let first = w.digits()[0].code();
            let last = w.digits().last().unwrap().code();
            assert!(!matches!(first, 3 | 4) && !matches!(last, 2 | 3), "{w}");
        }
    }
}

#[test]
fn h_counts_dominate_s_counts() {
    let opts = EnumerateOptions::default();
    for n in 2..=7 {
        let h = count(PathKind::H, n, &opts).unwrap().count;
        let s = count(PathKind::S, n, &opts).unwrap().count;
        assert!(h >= s, "n={n}: {h} < {s}");
    }
}

#[test]
fn s_paths_never_turn_back_into_a_tile() {
    for n in 2..=7 {
        for s in set(PathKind::S, n) {
            assert!(check_s(s.digits(), n).is_ok());
            assert!(s.digits().windows(2).all(|p| s_pair_allowed(p[0], p[1])), "{s}");
        }
    }
}

#[test]
fn w_to_s_is_a_bijection_onto_the_s_set() {
    for n in 2..=7 {
        let w = set(PathKind::W, n);
        let image: Vec<PathString> = w.iter().map(|p| w_to_s(p).unwrap()).collect();
        let image_set = strings(&image);
        assert_eq!(image_set.len(), w.len(), "injective n={n}");
        assert_eq!(image_set, strings(&set(PathKind::S, n)), "onto n={n}");
        for (wp, sp) in w.iter().zip(&image) {
            assert_eq!(&s_to_w(sp).unwrap(), wp);
        }
    }
}

#[test]
fn s_paths_touch_tiles_in_w_visiting_order() {
    for n in 2..=6 {
        for w in set(PathKind::W, n) {
            let s = w_to_s_digits(w.digits()).unwrap();
            let tiles: Vec<Point> = walk(Point::ORIGIN, &s)
                .iter()
                .zip(&s)
                .map(|(&p, &d)| tile_of_edge(p, d).key())
                .collect();
            assert_eq!(tiles, walk(Point::ORIGIN, w.digits()), "{w}");
        }
    }
}

#[test]
fn table_blocks_exactly_the_forbidden_turns() {
    for a in Direction::ALL {
        for b in Direction::ALL {
            assert_eq!(transition(a, b).is_blocked(), !w_pair_allowed(a, b), "({a},{b})");
        }
    }
}
