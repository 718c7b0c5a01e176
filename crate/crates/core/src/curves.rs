//! Level-`k` approximations of the generalized arrowhead curve.
//!
//! Edge rewriting (ER) starts from an S-path generator and replaces every
//! edge by a rotated (even direction) or rotated-and-reflected (odd
//! direction) copy of the generator. Node rewriting (NR) is obtained from a
//! W-path generator by converting it to its S-path, expanding with ER and
//! converting the result back.
//!
//! ER curves live on the overall lattice of side `n^k`; NR curves are walked
//! on tile keys, i.e. the inscribed lattice whose points are the dark tiles
//! of `F_n(k)`.

use crate::bijection::{s_to_w_digits, w_to_s_digits};
use crate::error::{Error, Result};
use crate::lattice::{contains_in_side, step, tile_of_edge, tile_centroid, triangular_number, Direction, Point, Tile};
use crate::paths::{format_digits, s_pair_allowed, PathKind, PathString, Violation};
use serde::Serialize;
use std::fmt;

/// Default upper bound on `T_n^k` for anything materialized per tile.
pub const DEFAULT_TILE_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    #[serde(rename = "ER")]
    EdgeRewriting,
    #[serde(rename = "NR")]
    NodeRewriting,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::EdgeRewriting => "ER",
            Method::NodeRewriting => "NR",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "er" => Ok(Method::EdgeRewriting),
            "nr" => Ok(Method::NodeRewriting),
            other => Err(format!("unknown method {other:?} (expected er or nr)")),
        }
    }
}

/// `T_n^k`, or `None` on overflow.
pub fn tile_count(n: usize, k: u32) -> Option<u128> {
    (triangular_number(n) as u128).checked_pow(k)
}

/// Side length `n^k` of the level-`k` triangle, in unit tiles.
pub fn side_length(n: usize, k: u32) -> Option<i64> {
    (n as i64).checked_pow(k)
}

fn guard(n: usize, k: u32, cap: u128) -> Result<u128> {
    match tile_count(n, k) {
        Some(t) if t <= cap => Ok(t),
        Some(t) => Err(Error::SizeGuard { tiles: t, cap }),
        None => Err(Error::SizeGuard { tiles: u128::MAX, cap }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveString {
    order: usize,
    method: Method,
    level: u32,
    digits: Vec<Direction>,
}

impl CurveString {
    /// Wraps raw digits after checking only the length law
    /// (`T_n^k` for ER, `T_n^k − 1` for NR).
    pub fn from_digits(method: Method, order: usize, level: u32, digits: Vec<Direction>) -> Result<Self> {
        if order < 2 {
            return Err(Error::DegenerateOrder(order));
        }
        let expected = expected_len(method, order, level);
        if expected != Some(digits.len() as u128) {
            return Err(Error::InvalidPath {
                kind: 'C',
                order,
                reason: format!(
                    "{method} level {level} needs {} digits, got {}",
                    expected.map_or_else(|| "too many".to_string(), |e| e.to_string()),
                    digits.len()
                ),
            });
        }
        Ok(CurveString { order, method, level, digits })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn digits(&self) -> &[Direction] {
        &self.digits
    }

    /// Vertices of the curve: lattice points for ER, tile keys for NR.
    pub fn walk(&self) -> Vec<Point> {
        crate::paths::walk(Point::ORIGIN, &self.digits)
    }

    /// Cartesian polyline: lattice points for ER, tile centroids for NR.
    pub fn polyline(&self) -> Vec<(f64, f64)> {
        let points = self.walk();
        match self.method {
            Method::EdgeRewriting => points.into_iter().map(Point::to_cartesian).collect(),
            Method::NodeRewriting => points
                .into_iter()
                .map(|p| tile_centroid(Tile::new(p.x, p.y)))
                .collect(),
        }
    }
}

impl fmt::Display for CurveString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_digits(&self.digits))
    }
}

fn expected_len(method: Method, n: usize, k: u32) -> Option<u128> {
    let t = tile_count(n, k)?;
    Some(match method {
        Method::EdgeRewriting => t,
        Method::NodeRewriting => t - 1,
    })
}

/// Finds `k` such that a curve of `len` digits is a level-`k` curve.
pub fn level_for_length(method: Method, n: usize, len: usize) -> Option<u32> {
    (0..64u32)
        .map_while(|k| expected_len(method, n, k).map(|e| (k, e)))
        .take_while(|&(_, e)| e <= len as u128)
        .find(|&(_, e)| e == len as u128)
        .map(|(k, _)| k)
}

/// The generator copy that replaces one edge of direction `d`.
pub fn substitute_digit(d: Direction, generator: &[Direction]) -> Vec<Direction> {
    let mut out = Vec::with_capacity(generator.len());
    substitute_into(d, generator, &mut out);
    out
}

#[inline]
fn substitute_into(d: Direction, generator: &[Direction], out: &mut Vec<Direction>) {
    let rot = i64::from(d.code());
    if d.is_even() {
        out.extend(generator.iter().map(|g| Direction::wrapping(rot + i64::from(g.code()))));
    } else {
        // reflect across the polar axis, then rotate
        out.extend(generator.iter().map(|g| Direction::wrapping(rot - i64::from(g.code()))));
    }
}

/// Edge rewriting on raw digits with no validation or size guard.
pub fn er_expand_digits(generator: &[Direction], k: u32) -> Vec<Direction> {
    let mut level = vec![Direction::EAST];
    for _ in 0..k {
        let mut next = Vec::with_capacity(level.len() * generator.len());
        for &d in &level {
            substitute_into(d, generator, &mut next);
        }
        level = next;
    }
    level
}

pub fn er_expand(generator: &PathString, k: u32) -> Result<CurveString> {
    er_expand_capped(generator, k, DEFAULT_TILE_CAP)
}

pub fn er_expand_capped(generator: &PathString, k: u32, cap: u128) -> Result<CurveString> {
    expect_kind(generator, PathKind::S)?;
    guard(generator.order(), k, cap)?;
    Ok(CurveString {
        order: generator.order(),
        method: Method::EdgeRewriting,
        level: k,
        digits: er_expand_digits(generator.digits(), k),
    })
}

pub fn nr_expand(generator: &PathString, k: u32) -> Result<CurveString> {
    nr_expand_capped(generator, k, DEFAULT_TILE_CAP)
}

pub fn nr_expand_capped(generator: &PathString, k: u32, cap: u128) -> Result<CurveString> {
    expect_kind(generator, PathKind::W)?;
    guard(generator.order(), k, cap)?;
    let s = w_to_s_digits(generator.digits())?;
    let er = er_expand_digits(&s, k);
    Ok(CurveString {
        order: generator.order(),
        method: Method::NodeRewriting,
        level: k,
        digits: s_to_w_digits(&er)?,
    })
}

fn expect_kind(p: &PathString, kind: PathKind) -> Result<()> {
    if p.kind() == kind {
        return Ok(());
    }
    Err(Error::InvalidPath {
        kind: p.kind().letter(),
        order: p.order(),
        reason: format!("generator must be a {kind}-path"),
    })
}

/// Dark tiles of `F_n(k)`, sorted row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GasketApproximation {
    order: usize,
    level: u32,
    tiles: Vec<Tile>,
}

impl GasketApproximation {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn side(&self) -> i64 {
        side_length(self.order, self.level).expect("guarded at construction")
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn contains(&self, t: Tile) -> bool {
        self.tiles.binary_search_by_key(&(t.y, t.x), |u| (u.y, u.x)).is_ok()
    }

    /// Per-tile flags over the side-`n^k` inscribed lattice, row-major.
    fn dark_mask(&self) -> Vec<bool> {
        let side = self.side();
        let mut mask = vec![false; triangular_number(side as usize)];
        for t in &self.tiles {
            mask[tile_index(side, *t)] = true;
        }
        mask
    }
}

#[inline]
fn tile_index(side: i64, t: Tile) -> usize {
    (t.y * side - t.y * (t.y - 1) / 2 + t.x) as usize
}

pub fn gasket_tiles(n: usize, k: u32) -> Result<GasketApproximation> {
    gasket_tiles_capped(n, k, DEFAULT_TILE_CAP)
}

/// Builds `F_n(k)` by recursively subdividing every dark tile into the
/// `T_n` upward tiles of an order-`n` pattern.
pub fn gasket_tiles_capped(n: usize, k: u32, cap: u128) -> Result<GasketApproximation> {
    if n < 2 {
        return Err(Error::DegenerateOrder(n));
    }
    guard(n, k, cap)?;
    let n = n as i64;
    let mut tiles = vec![Tile::new(0, 0)];
    for _ in 0..k {
        let mut next = Vec::with_capacity(tiles.len() * triangular_number(n as usize));
        for t in &tiles {
            for dy in 0..n {
                for dx in 0..n - dy {
                    next.push(Tile::new(n * t.x + dx, n * t.y + dy));
                }
            }
        }
        tiles = next;
    }
    tiles.sort_unstable_by_key(|t| (t.y, t.x));
    Ok(GasketApproximation { order: n as usize, level: k, tiles })
}

/// Closed-form membership test for `F_n(k)`: no base-`n` digit position
/// may have digit sum exceeding `n − 1`.
pub fn is_dark_digitwise(n: usize, k: u32, t: Tile) -> bool {
    let n = n as i64;
    let (mut x, mut y) = (t.x, t.y);
    if x < 0 || y < 0 {
        return false;
    }
    for _ in 0..k {
        if x % n + y % n > n - 1 {
            return false;
        }
        x /= n;
        y /= n;
    }
    x == 0 && y == 0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub method: Method,
    pub order: usize,
    pub level: u32,
    /// Edges walked.
    pub edges: usize,
    /// Dark tiles covered (ER) or visited (NR).
    pub tiles: usize,
}

/// Checks an ER curve: self-avoiding on the overall lattice, no turn back
/// into the same tile, every edge on a distinct dark tile of `F_n(k)` and
/// the walk ends at `(n^k, 0)`.
pub fn verify_er(c: &CurveString) -> std::result::Result<VerificationReport, Violation> {
    let gasket = gasket_tiles(c.order, c.level).map_err(|e| Violation::new(0, e.to_string()))?;
    let side = gasket.side();
    let mut dark = gasket.dark_mask();
    let mut seen = vec![false; triangular_number(side as usize + 1)];
    let point_index = |p: Point| tile_index(side + 1, Tile::new(p.x, p.y));
    let mut p = Point::ORIGIN;
    seen[point_index(p)] = true;
    for (i, &d) in c.digits.iter().enumerate() {
        if i > 0 && !s_pair_allowed(c.digits[i - 1], d) {
            return Err(Violation::new(i, format!("turn back into the same tile ({}{d})", c.digits[i - 1])));
        }
        let t = tile_of_edge(p, d);
        if !contains_in_side(side, t.key()) || !dark[tile_index(side, t)] {
            let why = if contains_in_side(side, t.key()) && gasket.contains(t) {
                "edge lies on an already used dark tile"
            } else {
                "edge does not lie on an unused dark tile of F_n(k)"
            };
            return Err(Violation::new(i, why));
        }
        dark[tile_index(side, t)] = false;
        p = step(p, d);
        if !contains_in_side(side + 1, p) {
            return Err(Violation::new(i, "walk leaves the overall lattice"));
        }
        let idx = point_index(p);
        if seen[idx] {
            return Err(Violation::new(i, "walk revisits a lattice point"));
        }
        seen[idx] = true;
    }
    if c.digits.len() != gasket.len() {
        return Err(Violation::new(c.digits.len(), "edge count differs from dark tile count"));
    }
    if p != Point::new(side, 0) {
        return Err(Violation::new(c.digits.len(), "walk does not end at (n^k, 0)"));
    }
    Ok(VerificationReport {
        method: Method::EdgeRewriting,
        order: c.order,
        level: c.level,
        edges: c.digits.len(),
        tiles: gasket.len(),
    })
}

/// Checks an NR curve: a Hamiltonian path over the dark-tile keys of
/// `F_n(k)` from `(0,0)` to `(n^k − 1, 0)` using unit lattice steps.
pub fn verify_nr(c: &CurveString) -> std::result::Result<VerificationReport, Violation> {
    let gasket = gasket_tiles(c.order, c.level).map_err(|e| Violation::new(0, e.to_string()))?;
    let side = gasket.side();
    let mut unvisited = gasket.dark_mask();
    let mut p = Point::ORIGIN;
    unvisited[0] = false;
    for (i, &d) in c.digits.iter().enumerate() {
        p = step(p, d);
        let t = Tile::new(p.x, p.y);
        if !contains_in_side(side, p) || !gasket.contains(t) {
            return Err(Violation::new(i, "step leaves the dark tiles of F_n(k)"));
        }
        let idx = tile_index(side, t);
        if !unvisited[idx] {
            return Err(Violation::new(i, "step revisits a dark tile"));
        }
        unvisited[idx] = false;
    }
    if c.digits.len() + 1 != gasket.len() {
        return Err(Violation::new(c.digits.len(), "walk does not visit every dark tile"));
    }
    if p != Point::new(side - 1, 0) {
        return Err(Violation::new(c.digits.len(), "walk does not end at (n^k − 1, 0)"));
    }
    Ok(VerificationReport {
        method: Method::NodeRewriting,
        order: c.order,
        level: c.level,
        edges: c.digits.len(),
        tiles: gasket.len(),
    })
}

pub fn verify(c: &CurveString) -> std::result::Result<VerificationReport, Violation> {
    match c.method {
        Method::EdgeRewriting => verify_er(c),
        Method::NodeRewriting => verify_nr(c),
    }
}

/// `log_n(T_n)`.
pub fn hausdorff_dimension(n: usize) -> f64 {
    (triangular_number(n) as f64).ln() / (n as f64).ln()
}
