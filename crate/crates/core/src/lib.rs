//! Generator paths and recursive curves of the generalized Sierpiński
//! arrowhead curve.
//!
//! - [`lattice`]: axial triangular-lattice geometry and dark tiles.
//! - [`paths`]: H-, W- and S-path strings and their validity predicates.
//! - [`bijection`]: the W ↔ S transformation table.
//! - [`enumerate`]: exhaustive, deterministic path enumeration.
//! - [`curves`]: edge- and node-rewriting approximations and their checks.
//! - [`lsystem`]: L-system rule export and a turtle interpreter.
//! - [`render`]: SVG output.

pub mod bijection;
pub mod curves;
pub mod enumerate;
pub mod error;
pub mod lattice;
pub mod lsystem;
pub mod paths;
pub mod render;

pub use error::{Error, Result};
pub use lattice::{triangular_number, Direction, GridRole, GridSpec, Point, Tile};
pub use paths::{format_digits, parse_digits, PathKind, PathRecord, PathString, Violation};
