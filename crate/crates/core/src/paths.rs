//! Direction-code strings and the H/W/S path predicates.
//!
//! H-paths are Hamiltonian paths on the inscribed grid from `A = (0,0)` to
//! `B = (n−1, 0)`. W-paths are the H-paths whose zero-supplemented string
//! contains no forbidden turn. S-paths are vertex-distinct walks of `T_n`
//! edges on the overall grid from `(0,0)` to `(n, 0)` whose edges lie on
//! pairwise distinct dark tiles.

use crate::error::{Error, Result};
use crate::lattice::{step, tile_of_edge, triangular_number, Direction, GridSpec, Point};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PathKind {
    H,
    W,
    S,
}

impl PathKind {
    pub fn letter(self) -> char {
        match self {
            PathKind::H => 'H',
            PathKind::W => 'W',
            PathKind::S => 'S',
        }
    }

    /// Number of digits of a path of this kind on an order-`n` pattern.
    pub fn digit_count(self, n: usize) -> usize {
        match self {
            PathKind::H | PathKind::W => triangular_number(n) - 1,
            PathKind::S => triangular_number(n),
        }
    }
}

impl fmt::Display for PathKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for PathKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "h" | "H" => Ok(PathKind::H),
            "w" | "W" => Ok(PathKind::W),
            "s" | "S" => Ok(PathKind::S),
            other => Err(format!("unknown path kind {other:?} (expected h, w or s)")),
        }
    }
}

/// Parses an ASCII digit string such as `"111544015"`.
pub fn parse_digits(text: &str) -> Result<Vec<Direction>> {
    text.chars()
        .enumerate()
        .map(|(index, ch)| match ch {
            '0'..='5' => Ok(Direction::wrapping(i64::from(ch as u8 - b'0'))),
            _ => Err(Error::InvalidDigit { index, ch }),
        })
        .collect()
}

pub fn format_digits(digits: &[Direction]) -> String {
    digits.iter().map(|d| char::from(b'0' + d.code())).collect()
}

/// A validated direction string of a given kind and order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathString {
    order: usize,
    kind: PathKind,
    digits: Vec<Direction>,
}

impl PathString {
    pub fn new(kind: PathKind, order: usize, digits: Vec<Direction>) -> Result<Self> {
        check(kind, &digits, order).map_err(|v| Error::InvalidPath {
            kind: kind.letter(),
            order,
            reason: v.to_string(),
        })?;
        Ok(PathString { order, kind, digits })
    }

    pub fn parse(kind: PathKind, order: usize, text: &str) -> Result<Self> {
        Self::new(kind, order, parse_digits(text)?)
    }

    /// Skips validation; used by the enumerator, which only emits valid paths.
    pub(crate) fn new_unchecked(kind: PathKind, order: usize, digits: Vec<Direction>) -> Self {
        PathString { order, kind, digits }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn kind(&self) -> PathKind {
        self.kind
    }

    pub fn digits(&self) -> &[Direction] {
        &self.digits
    }

    pub fn into_digits(self) -> Vec<Direction> {
        self.digits
    }

    pub fn to_record(&self) -> PathRecord {
        PathRecord {
            n: self.order,
            kind: self.kind,
            digits: format_digits(&self.digits),
        }
    }
}

impl fmt::Display for PathString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_digits(&self.digits))
    }
}

/// One line of the JSONL path stream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathRecord {
    pub n: usize,
    pub kind: PathKind,
    pub digits: String,
}

impl PathRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("path record serializes")
    }

    pub fn into_path(self) -> Result<PathString> {
        PathString::parse(self.kind, self.n, &self.digits)
    }
}

/// First point of failure when checking a direction string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub index: usize,
    pub reason: String,
}

impl Violation {
    pub(crate) fn new(index: usize, reason: impl Into<String>) -> Self {
        Violation { index, reason: reason.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (at index {})", self.reason, self.index)
    }
}

impl std::error::Error for Violation {}

#[inline]
pub fn h_pair_allowed(a: Direction, b: Direction) -> bool {
    a.turn_to(b) != 3
}

#[inline]
pub fn w_pair_allowed(a: Direction, b: Direction) -> bool {
    let forbidden = if a.is_even() { 4 } else { 2 };
    let turn = a.turn_to(b);
    turn != 3 && turn != forbidden
}

#[inline]
pub fn s_pair_allowed(a: Direction, b: Direction) -> bool {
    let forbidden = if a.is_even() { 2 } else { 4 };
    let turn = a.turn_to(b);
    turn != 3 && turn != forbidden
}

/// Prepends and appends the basic direction `0`.
pub fn supplement(digits: &[Direction]) -> Vec<Direction> {
    let mut out = Vec::with_capacity(digits.len() + 2);
    out.push(Direction::EAST);
    out.extend_from_slice(digits);
    out.push(Direction::EAST);
    out
}

pub fn walk(start: Point, digits: &[Direction]) -> Vec<Point> {
    let mut points = Vec::with_capacity(digits.len() + 1);
    let mut p = start;
    points.push(p);
    for &d in digits {
        p = step(p, d);
        points.push(p);
    }
    points
}

pub fn check(kind: PathKind, digits: &[Direction], n: usize) -> std::result::Result<(), Violation> {
    match kind {
        PathKind::H => check_h(digits, n),
        PathKind::W => check_w(digits, n),
        PathKind::S => check_s(digits, n),
    }
}

fn expect_len(digits: &[Direction], want: usize) -> std::result::Result<(), Violation> {
    if digits.len() != want {
        let index = digits.len().min(want);
        return Err(Violation::new(
            index,
            format!("length {} but expected {want}", digits.len()),
        ));
    }
    Ok(())
}

fn grid(n: usize, overall: bool) -> std::result::Result<GridSpec, Violation> {
    let g = if overall { GridSpec::overall(n) } else { GridSpec::inscribed(n) };
    g.map_err(|e| Violation::new(0, e.to_string()))
}

pub fn check_h(digits: &[Direction], n: usize) -> std::result::Result<(), Violation> {
    let g = grid(n, false)?;
    expect_len(digits, PathKind::H.digit_count(n))?;
    let mut seen = HashSet::from([g.start()]);
    let mut p = g.start();
    for (i, &d) in digits.iter().enumerate() {
        if i > 0 && !h_pair_allowed(digits[i - 1], d) {
            return Err(Violation::new(i, format!("turn back {}{}", digits[i - 1], d)));
        }
        p = step(p, d);
        if !g.contains(p) {
            return Err(Violation::new(i, "walk leaves the inscribed grid"));
        }
        if !seen.insert(p) {
            return Err(Violation::new(i, "walk revisits a grid point"));
        }
    }
    if p != g.end() {
        return Err(Violation::new(digits.len(), "walk does not end at B"));
    }
    Ok(())
}

pub fn check_w(digits: &[Direction], n: usize) -> std::result::Result<(), Violation> {
    check_h(digits, n)?;
    let sup = supplement(digits);
    for (i, pair) in sup.windows(2).enumerate() {
        if !w_pair_allowed(pair[0], pair[1]) {
            // index i of the supplemented string is digit i−1 of the path
            return Err(Violation::new(
                i.saturating_sub(1).min(digits.len().saturating_sub(1)),
                format!("forbidden turn {}{}", pair[0], pair[1]),
            ));
        }
    }
    Ok(())
}

pub fn check_s(digits: &[Direction], n: usize) -> std::result::Result<(), Violation> {
    let g = grid(n, true)?;
    expect_len(digits, PathKind::S.digit_count(n))?;
    let mut seen_points = HashSet::from([g.start()]);
    let mut seen_tiles = HashSet::new();
    let mut p = g.start();
    for (i, &d) in digits.iter().enumerate() {
        let q = step(p, d);
        if !g.contains(q) {
            return Err(Violation::new(i, "walk leaves the overall grid"));
        }
        if !seen_points.insert(q) {
            return Err(Violation::new(i, "walk revisits a grid point"));
        }
        if !seen_tiles.insert(tile_of_edge(p, d)) {
            return Err(Violation::new(i, "edge lies on an already used dark tile"));
        }
        p = q;
    }
    if p != g.end() {
        return Err(Violation::new(digits.len(), "walk does not end at B"));
    }
    Ok(())
}

pub fn validate_h(digits: &[Direction], n: usize) -> bool {
    check_h(digits, n).is_ok()
}

pub fn validate_w(digits: &[Direction], n: usize) -> bool {
    check_w(digits, n).is_ok()
}

pub fn validate_s(digits: &[Direction], n: usize) -> bool {
    check_s(digits, n).is_ok()
}

/// The zig-zag W-path: rows alternately climbing up-right and descending
/// down-left, closed by an arrowhead `15` when `n` is even.
pub fn trivial_w(n: usize) -> Result<PathString> {
    if n < 2 {
        return Err(Error::DegenerateOrder(n));
    }
    let [right, up_right, down_left, down_right] =
        [0u8, 1, 4, 5].map(|d| Direction::new(d).expect("valid code"));
    let rounds = if n % 2 == 1 { (n - 1) / 2 } else { (n - 2) / 2 };
    let mut digits = Vec::with_capacity(PathKind::W.digit_count(n));
    let mut j = 1;
    for _ in 0..rounds {
        digits.extend(std::iter::repeat(up_right).take(n - j));
        digits.push(down_right);
        j += 1;
        digits.extend(std::iter::repeat(down_left).take(n - j));
        digits.push(right);
        j += 1;
    }
    if n % 2 == 0 {
        digits.extend([up_right, down_right]);
    }
    Ok(PathString::new_unchecked(PathKind::W, n, digits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Vec<Direction> {
        parse_digits(s).unwrap()
    }

    fn dir(c: u8) -> Direction {
        Direction::new(c).unwrap()
    }

    #[test]
    fn pair_predicates() {
        assert!(!h_pair_allowed(dir(0), dir(3)));
        assert!(!h_pair_allowed(dir(5), dir(2)));
        assert!(h_pair_allowed(dir(1), dir(2)));

        assert!(!w_pair_allowed(dir(5), dir(1)));
        assert!(!w_pair_allowed(dir(0), dir(4)));
        assert!(w_pair_allowed(dir(1), dir(5)));

        assert!(!s_pair_allowed(dir(0), dir(2)));
        assert!(!s_pair_allowed(dir(1), dir(5)));
        assert!(s_pair_allowed(dir(1), dir(0)));
    }

    #[test]
    fn each_predicate_blocks_twelve_pairs() {
        for pred in [w_pair_allowed, s_pair_allowed] {
            let blocked = Direction::ALL
                .iter()
                .flat_map(|&a| Direction::ALL.iter().map(move |&b| (a, b)))
                .filter(|&(a, b)| !pred(a, b))
                .count();
            assert_eq!(blocked, 12);
        }
    }

    #[test]
    fn h_examples() {
        assert!(validate_h(&d("151215540"), 4));
        assert!(validate_h(&d("15"), 2));
        assert!(!validate_h(&d("00"), 2));
    }

    #[test]
    fn w_examples() {
        assert!(validate_w(&d("111544015"), 4));
        assert!(!validate_w(&d("151215540"), 4));
        assert!(validate_w(&d("11111544440111544015"), 6));
        let err = check_w(&d("151215540"), 4).unwrap_err();
        assert!(err.reason.contains("51"), "{err}");
    }

    #[test]
    fn s_examples() {
        assert!(validate_s(&d("105"), 2));
        assert!(validate_s(&d("1051220555"), 4));
        assert!(!validate_s(&d("012"), 2));
    }

    #[test]
    fn violations_report_position() {
        let v = check_h(&d("00"), 2).unwrap_err();
        assert_eq!(v.index, 1);
        let v = check_s(&d("000"), 2).unwrap_err();
        assert_eq!(v.index, 2);
        let v = check_h(&d("1"), 2).unwrap_err();
        assert!(v.reason.contains("length"));
        assert!(check_h(&d("15"), 1).is_err());
    }

    #[test]
    fn trivial_w_examples() {
        assert_eq!(trivial_w(2).unwrap().to_string(), "15");
        assert_eq!(trivial_w(4).unwrap().to_string(), "111544015");
        assert_eq!(trivial_w(6).unwrap().to_string(), "11111544440111544015");
        assert_eq!(trivial_w(1), Err(Error::DegenerateOrder(1)));
    }

    #[test]
    fn trivial_w_is_well_formed_for_all_orders() {
        for n in 2..=64 {
            let w = trivial_w(n).unwrap();
            assert_eq!(w.digits().len(), triangular_number(n) - 1, "n={n}");
            assert!(validate_w(w.digits(), n), "n={n}");
            let first = w.digits()[0].code();
            let last = w.digits().last().unwrap().code();
            assert!(first != 3 && first != 4 && last != 2 && last != 3);
        }
    }

    #[test]
    fn walk_examples() {
        let p = |x, y| Point::new(x, y);
        assert_eq!(walk(Point::ORIGIN, &d("105")), vec![p(0, 0), p(0, 1), p(1, 1), p(2, 0)]);
        assert_eq!(walk(Point::ORIGIN, &[]), vec![p(0, 0)]);
        assert_eq!(walk(Point::ORIGIN, &d("15")), vec![p(0, 0), p(0, 1), p(1, 0)]);
    }

    #[test]
    fn parse_rejects_bad_digits() {
        assert_eq!(parse_digits("126"), Err(Error::InvalidDigit { index: 2, ch: '6' }));
        assert_eq!(format_digits(&d("012345")), "012345");
    }

    #[test]
    fn path_string_validates_on_construction() {
        assert!(PathString::parse(PathKind::S, 2, "105").is_ok());
        assert!(matches!(
            PathString::parse(PathKind::W, 4, "151215540"),
            Err(Error::InvalidPath { kind: 'W', order: 4, .. })
        ));
    }

    #[test]
    fn jsonl_record_format() {
        let w = trivial_w(4).unwrap();
        let line = w.to_record().to_json_line();
        assert_eq!(line, r#"{"n":4,"kind":"W","digits":"111544015"}"#);
        let back: PathRecord = serde_json::from_str(&line).unwrap();
        assert_eq!(back.into_path().unwrap(), w);
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("w".parse::<PathKind>(), Ok(PathKind::W));
        assert!("x".parse::<PathKind>().is_err());
    }
}
