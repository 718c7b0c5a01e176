//! Error type shared by every module of the crate.

use crate::lattice::{Direction, Point};
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("direction code {0} is outside 0..=5")]
    InvalidDirection(u8),

    #[error("invalid digit {ch:?} at index {index} (expected 0-5)")]
    InvalidDigit { index: usize, ch: char },

    #[error("order {0} is degenerate (n must be at least 2)")]
    DegenerateOrder(usize),

    #[error("order {order} is outside the supported range {min}..={max}")]
    OrderOutOfRange { order: usize, min: usize, max: usize },

    #[error("edge from ({},{}) in direction {} leaves the grid", .from.x, .from.y, .dir)]
    OutOfGrid { from: Point, dir: Direction },

    #[error("blocked direction pair ({},{}) at index {index}", .pair.0, .pair.1)]
    BlockedPair { index: usize, pair: (Direction, Direction) },

    #[error("{kind}-path of order {order} rejected: {reason}")]
    InvalidPath { kind: char, order: usize, reason: String },

    #[error("{tiles} tiles exceed the size guard of {cap}")]
    SizeGuard { tiles: u128, cap: u128 },

    #[error("polyline is empty")]
    EmptyPolyline,

    #[error("invalid render spec: {0}")]
    InvalidRenderSpec(String),
}
