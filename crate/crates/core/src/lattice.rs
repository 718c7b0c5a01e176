//! Integer geometry on the triangular lattice.
//!
//! Points use axial coordinates `(x, y)`: the pole `A` of a grid is `(0, 0)`,
//! `B` lies on the positive `x` axis and `C` on the positive `y` axis. The
//! Cartesian embedding is `X = x + y/2`, `Y = y·√3/2`, so one lattice step is
//! one tile side. Everything except [`Point::to_cartesian`] and
//! [`tile_centroid`] is exact integer arithmetic.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

pub const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Absolute edge direction: code `d` points at `d·60°` counterclockwise
/// from the polar axis `AB`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Direction(u8);

impl Direction {
    pub const ALL: [Direction; 6] = [
        Direction(0),
        Direction(1),
        Direction(2),
        Direction(3),
        Direction(4),
        Direction(5),
    ];
    pub const EAST: Direction = Direction(0);

    pub fn new(code: u8) -> Result<Self> {
        if code < 6 {
            Ok(Direction(code))
        } else {
            Err(Error::InvalidDirection(code))
        }
    }

    /// Reduces any integer modulo 6.
    pub fn wrapping(code: i64) -> Self {
        Direction(code.rem_euclid(6) as u8)
    }

    #[inline]
    pub fn code(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn is_even(self) -> bool {
        self.0 % 2 == 0
    }

    #[inline]
    pub fn reverse(self) -> Self {
        Direction((self.0 + 3) % 6)
    }

    /// Rotates counterclockwise by `steps · 60°`.
    #[inline]
    pub fn rotate(self, steps: i64) -> Self {
        Self::wrapping(self.0 as i64 + steps)
    }

    /// `(b − a) mod 6` where `self = a`.
    #[inline]
    pub fn turn_to(self, next: Direction) -> u8 {
        (next.0 + 6 - self.0) % 6
    }

    /// Axial displacement of one unit step.
    #[inline]
    pub fn offset(self) -> (i64, i64) {
        match self.0 {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 1),
            3 => (-1, 0),
            4 => (0, -1),
            _ => (1, -1),
        }
    }

    /// Unit vector at `d·60°`.
    pub fn unit_vector(self) -> (f64, f64) {
        let angle = f64::from(self.0) * std::f64::consts::FRAC_PI_3;
        (angle.cos(), angle.sin())
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u8> for Direction {
    type Error = Error;

    fn try_from(code: u8) -> Result<Self> {
        Direction::new(code)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn to_cartesian(self) -> (f64, f64) {
        (
            self.x as f64 + self.y as f64 / 2.0,
            self.y as f64 * SQRT_3 / 2.0,
        )
    }
}

/// An upward-facing unit triangle keyed by its lower-left corner: corners
/// `(x,y)`, `(x+1,y)` and `(x,y+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Tile {
    pub x: i64,
    pub y: i64,
}

impl Tile {
    pub const fn new(x: i64, y: i64) -> Self {
        Tile { x, y }
    }

    pub fn corners(self) -> [Point; 3] {
        [
            Point::new(self.x, self.y),
            Point::new(self.x + 1, self.y),
            Point::new(self.x, self.y + 1),
        ]
    }

    /// The inscribed-grid point this tile corresponds to.
    pub fn key(self) -> Point {
        Point::new(self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridRole {
    /// Centroids of the dark tiles: `n` points per side.
    Inscribed,
    /// Corners of the dark tiles: `n + 1` points per side.
    Overall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridSpec {
    order: usize,
    role: GridRole,
}

impl GridSpec {
    pub fn new(order: usize, role: GridRole) -> Result<Self> {
        if order < 2 {
            return Err(Error::DegenerateOrder(order));
        }
        Ok(GridSpec { order, role })
    }

    pub fn inscribed(order: usize) -> Result<Self> {
        Self::new(order, GridRole::Inscribed)
    }

    pub fn overall(order: usize) -> Result<Self> {
        Self::new(order, GridRole::Overall)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn role(&self) -> GridRole {
        self.role
    }

    /// Points per side.
    pub fn side(&self) -> usize {
        match self.role {
            GridRole::Inscribed => self.order,
            GridRole::Overall => self.order + 1,
        }
    }

    pub fn point_count(&self) -> usize {
        triangular_number(self.side())
    }

    pub fn start(&self) -> Point {
        Point::ORIGIN
    }

    /// The terminal corner `B`.
    pub fn end(&self) -> Point {
        Point::new(self.side() as i64 - 1, 0)
    }

    pub fn contains(&self, p: Point) -> bool {
        contains_in_side(self.side() as i64, p)
    }

    /// Row-major index of a contained point (row `y`, then column `x`).
    pub fn index_of(&self, p: Point) -> Option<usize> {
        if !self.contains(p) {
            return None;
        }
        let side = self.side() as i64;
        // rows below y hold side, side-1, ..., side-y+1 points
        let before = p.y * side - p.y * (p.y - 1) / 2;
        Some((before + p.x) as usize)
    }

    /// All points in row-major order.
    pub fn points(&self) -> Vec<Point> {
        let side = self.side() as i64;
        (0..side)
            .flat_map(|y| (0..side - y).map(move |x| Point::new(x, y)))
            .collect()
    }
}

pub fn triangular_number(n: usize) -> usize {
    n * (n + 1) / 2
}

pub fn contains(grid: &GridSpec, p: Point) -> bool {
    grid.contains(p)
}

pub(crate) fn contains_in_side(side: i64, p: Point) -> bool {
    p.x >= 0 && p.y >= 0 && p.x + p.y <= side - 1
}

#[inline]
pub fn step(p: Point, d: Direction) -> Point {
    let (dx, dy) = d.offset();
    Point::new(p.x + dx, p.y + dy)
}

/// The unique upward tile having the edge `(p, step(p, d))` as a side.
#[inline]
pub fn tile_of_edge(p: Point, d: Direction) -> Tile {
    match d.code() {
        0 | 1 => Tile::new(p.x, p.y),
        2 | 3 => Tile::new(p.x - 1, p.y),
        _ => Tile::new(p.x, p.y - 1),
    }
}

/// [`tile_of_edge`] restricted to edges inside `grid` (normally an overall grid).
pub fn edge_to_tile(grid: &GridSpec, p: Point, d: Direction) -> Result<Tile> {
    if grid.contains(p) && grid.contains(step(p, d)) {
        Ok(tile_of_edge(p, d))
    } else {
        Err(Error::OutOfGrid { from: p, dir: d })
    }
}

pub fn tile_centroid(t: Tile) -> (f64, f64) {
    (
        t.x as f64 + t.y as f64 / 2.0 + 0.5,
        SQRT_3 * (t.y as f64 + 1.0 / 3.0) / 2.0,
    )
}

pub fn distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}
