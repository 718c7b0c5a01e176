//! The W ↔ S transformation table.
//!
//! A W-path is read as consecutive pairs `(a, b)` of its zero-supplemented
//! string; each pair names the contact points of three consecutive tiles and
//! maps to the S-path edge crossing the middle tile. The reverse direction
//! reads consecutive S digits `(s_i, s_{i+1})` through the transpose.

use crate::error::{Error, Result};
use crate::lattice::Direction;
use crate::paths::{self, supplement, PathKind, PathString};

/// `BLOCKED` marks a turn no W-path can make.
const BLOCKED: u8 = u8::MAX;
const X: u8 = BLOCKED;

#[rustfmt::skip]
const TRANSITIONS: [[u8; 6]; 6] = [
    [0, 1, 1, X, X, 0],
    [0, 1, 1, X, X, 0],
    [X, 2, 2, 3, 3, X],
    [X, 2, 2, 3, 3, X],
    [5, X, X, 4, 4, 5],
    [5, X, X, 4, 4, 5],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell<T> {
    Value(T),
    Blocked,
}

impl<T> Cell<T> {
    pub fn value(self) -> Option<T> {
        match self {
            Cell::Value(v) => Some(v),
            Cell::Blocked => None,
        }
    }

    pub fn is_blocked(&self) -> bool {
        matches!(self, Cell::Blocked)
    }
}

#[inline]
pub fn transition(a: Direction, b: Direction) -> Cell<Direction> {
    match TRANSITIONS[a.code() as usize][b.code() as usize] {
        BLOCKED => Cell::Blocked,
        v => Cell::Value(Direction::wrapping(i64::from(v))),
    }
}

fn lookup(index: usize, a: Direction, b: Direction) -> Result<Direction> {
    transition(a, b).value().ok_or(Error::BlockedPair { index, pair: (a, b) })
}

/// Converts a W digit string into the S digit string of the same tile order.
///
/// Does not validate its input; a blocked lookup is reported with the index
/// of the offending pair in the supplemented string.
pub fn w_to_s_digits(w: &[Direction]) -> Result<Vec<Direction>> {
    supplement(w)
        .windows(2)
        .enumerate()
        .map(|(i, p)| lookup(i, p[0], p[1]))
        .collect()
}

/// Converts an S digit string into its W digit string (transposed lookup).
pub fn s_to_w_digits(s: &[Direction]) -> Result<Vec<Direction>> {
    s.windows(2)
        .enumerate()
        .map(|(i, p)| lookup(i, p[1], p[0]))
        .collect()
}

pub fn w_to_s(w: &PathString) -> Result<PathString> {
    expect_kind(w, PathKind::W)?;
    let digits = w_to_s_digits(w.digits())?;
    PathString::new(PathKind::S, w.order(), digits)
}

pub fn s_to_w(s: &PathString) -> Result<PathString> {
    expect_kind(s, PathKind::S)?;
    let digits = s_to_w_digits(s.digits())?;
    PathString::new(PathKind::W, s.order(), digits)
}

fn expect_kind(p: &PathString, kind: PathKind) -> Result<()> {
    if p.kind() == kind {
        Ok(())
    } else {
        Err(Error::InvalidPath {
            kind: p.kind().letter(),
            order: p.order(),
            reason: format!("expected a {kind}-path"),
        })
    }
}

/// Confirms the stored table agrees with the forbidden-turn formula and has
/// the paired row and column structure. Returns the first mismatch.
pub fn self_check() -> std::result::Result<(), String> {
    for a in Direction::ALL {
        for b in Direction::ALL {
            let blocked = transition(a, b).is_blocked();
            if blocked == paths::w_pair_allowed(a, b) {
                return Err(format!("cell ({a},{b}) disagrees with the forbidden-turn rule"));
            }
            // rows pair as {0,1},{2,3},{4,5}
            let row_partner = Direction::wrapping(i64::from(a.code() ^ 1));
            if transition(a, b) != transition(row_partner, b) {
                return Err(format!("rows {a} and {row_partner} differ at column {b}"));
            }
            // columns pair as {1,2},{3,4},{5,0}
            let col_partner = if b.is_even() { b.rotate(-1) } else { b.rotate(1) };
            if transition(a, b) != transition(a, col_partner) {
                return Err(format!("columns {b} and {col_partner} differ at row {a}"));
            }
        }
    }
    Ok(())
}
