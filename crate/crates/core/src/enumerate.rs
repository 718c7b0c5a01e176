//! Exhaustive backtracking enumeration of H-, W- and S-paths.
//!
//! The search extends a direction string one digit at a time, trying codes
//! in increasing order, so solutions come out in lexicographic order. Grid
//! points and tiles are indexed row-major and tracked in `u128` bitsets.
//!
//! For parallel runs the tree is cut at a fixed prefix depth. Each prefix
//! is an independent task; counts are summed and path streams are
//! concatenated in prefix order, so results do not depend on the worker
//! count.

use crate::error::{Error, Result};
use crate::lattice::{step, tile_of_edge, Direction, GridSpec, Tile};
use crate::paths::{h_pair_allowed, s_pair_allowed, w_pair_allowed, PathKind, PathString};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 12;

/// Published counts for `n = 2..=9`.
const H_COUNTS: [u64; 8] = [1, 2, 10, 92, 1852, 78032, 6846876, 1255156712];
const WS_COUNTS: [u64; 8] = [1, 2, 4, 16, 68, 464, 3828, 44488];

pub fn reference_count(kind: PathKind, n: usize) -> Option<u64> {
    let table = match kind {
        PathKind::H => &H_COUNTS,
        PathKind::W | PathKind::S => &WS_COUNTS,
    };
    n.checked_sub(2).and_then(|i| table.get(i)).copied()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Worker threads; 0 lets the pool decide.
    pub workers: usize,
    /// Depth at which the search tree is cut into tasks.
    pub split_depth: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { workers: 0, split_depth: 3 }
    }
}

impl EnumerateOptions {
    pub fn single_threaded() -> Self {
        EnumerateOptions { workers: 1, ..Self::default() }
    }

    pub fn with_workers(workers: usize) -> Self {
        EnumerateOptions { workers, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnumerationReport {
    pub order: usize,
    pub kind: PathKind,
    pub count: u64,
    pub elapsed: Duration,
}

impl EnumerationReport {
    /// `Some(true)` when the count matches the published value, `None` when
    /// there is no published value for this order.
    pub fn matches_reference(&self) -> Option<bool> {
        reference_count(self.kind, self.order).map(|r| r == self.count)
    }

    pub fn summary(&self) -> SummaryRecord {
        SummaryRecord {
            n: self.order,
            kind: self.kind,
            count: self.count,
            elapsed_s: self.elapsed.as_secs_f64(),
            unverified: reference_count(self.kind, self.order).is_none(),
        }
    }
}

/// Final line of an enumeration run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRecord {
    pub n: usize,
    pub kind: PathKind,
    pub count: u64,
    pub elapsed_s: f64,
    /// Set for orders beyond the published table.
    pub unverified: bool,
}

const NONE: u8 = u8::MAX;
/// Row of the pair table used before the first digit.
const FIRST: usize = 6;

struct Searcher {
    kind: PathKind,
    order: usize,
    len: usize,
    start: u8,
    end: u8,
    neighbors: Vec<[u8; 6]>,
    edge_tiles: Vec<[u8; 6]>,
    allowed: [[bool; 6]; 7],
    can_finish: [bool; 6],
    /// S only: tiles having a point as a corner, and the corners of a tile.
    point_tiles: Vec<Vec<u8>>,
    tile_corners: Vec<[u8; 3]>,
    /// Points no path may visit.
    blocked: u128,
    neighbor_masks: Vec<u128>,
    all_points: u128,
}

#[derive(Clone, Copy)]
struct State {
    pos: u8,
    visited: u128,
    tiles: u128,
    last: usize,
    depth: usize,
}

struct Task {
    prefix: Vec<Direction>,
    state: State,
}

impl Searcher {
    fn new(kind: PathKind, order: usize) -> Result<Self> {
        if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
            return Err(Error::OrderOutOfRange { order, min: MIN_ORDER, max: MAX_ORDER });
        }
        let grid = match kind {
            PathKind::S => GridSpec::overall(order)?,
            PathKind::H | PathKind::W => GridSpec::inscribed(order)?,
        };
        let tile_grid = GridSpec::inscribed(order)?;
        let points = grid.points();
        let mut neighbors = vec![[NONE; 6]; points.len()];
        let mut point_tiles = vec![Vec::new(); points.len()];
        let mut tile_corners = Vec::new();
        let mut blocked = 0u128;
        if kind == PathKind::S {
            for (t, tile) in tile_grid.points().into_iter().enumerate() {
                let corners = Tile::new(tile.x, tile.y)
                    .corners()
                    .map(|c| grid.index_of(c).expect("tile corners lie in the overall grid") as u8);
                for c in corners {
                    point_tiles[c as usize].push(t as u8);
                }
                tile_corners.push(corners);
            }
            // a corner of a single tile (the apex C) cannot join two tiles
            for (i, tiles) in point_tiles.iter().enumerate() {
                let p = points[i];
                if tiles.len() == 1 && p != grid.start() && p != grid.end() {
                    blocked |= 1u128 << i;
                }
            }
        }
        let mut edge_tiles = vec![[NONE; 6]; points.len()];
        for (i, &p) in points.iter().enumerate() {
            for d in Direction::ALL {
                if let Some(j) = grid.index_of(step(p, d)) {
                    neighbors[i][d.code() as usize] = j as u8;
                    if let Some(t) = tile_grid.index_of(tile_of_edge(p, d).key()) {
                        edge_tiles[i][d.code() as usize] = t as u8;
                    }
                }
            }
        }
        let pair: fn(Direction, Direction) -> bool = match kind {
            PathKind::H => h_pair_allowed,
            PathKind::W => w_pair_allowed,
            PathKind::S => s_pair_allowed,
        };
        let mut allowed = [[true; 6]; 7];
        let mut can_finish = [true; 6];
        for a in Direction::ALL {
            for b in Direction::ALL {
                allowed[a.code() as usize][b.code() as usize] = pair(a, b);
            }
        }
        if kind == PathKind::W {
            // the string is supplemented with a leading and trailing 0
            allowed[FIRST] = allowed[0];
            for a in Direction::ALL {
                can_finish[a.code() as usize] = w_pair_allowed(a, Direction::EAST);
            }
        }
        let neighbor_masks = neighbors
            .iter()
            .map(|row| row.iter().filter(|&&j| j != NONE).fold(0u128, |m, &j| m | 1u128 << j))
            .collect();
        Ok(Searcher {
            kind,
            order,
            len: kind.digit_count(order),
            start: grid.index_of(grid.start()).unwrap() as u8,
            end: grid.index_of(grid.end()).unwrap() as u8,
            neighbors,
            edge_tiles,
            allowed,
            can_finish,
            neighbor_masks,
            all_points: if points.len() == 128 { u128::MAX } else { (1u128 << points.len()) - 1 },
            point_tiles,
            tile_corners,
            blocked,
        })
    }

    fn root(&self) -> State {
        State {
            pos: self.start,
            visited: (1u128 << self.start) | self.blocked,
            tiles: 0,
            last: FIRST,
            depth: 0,
        }
    }

    #[inline]
    fn advance(&self, s: &State, d: usize) -> Option<State> {
        if !self.allowed[s.last][d] {
            return None;
        }
        let next = self.neighbors[s.pos as usize][d];
        if next == NONE {
            return None;
        }
        let bit = 1u128 << next;
        if s.visited & bit != 0 {
            return None;
        }
        let depth = s.depth + 1;
        // B is the terminal point and nothing else
        if (next == self.end) != (depth == self.len) {
            return None;
        }
        if depth == self.len && !self.can_finish[d] {
            return None;
        }
        let mut tiles = s.tiles;
        if self.kind == PathKind::S {
            let tile = 1u128 << self.edge_tiles[s.pos as usize][d];
            if tiles & tile != 0 {
                return None;
            }
            tiles |= tile;
        }
        let next_state = State { pos: next, visited: s.visited | bit, tiles, last: d, depth };
        if depth < self.len && self.strands_something(&next_state, s.pos) {
            return None;
        }
        Some(next_state)
    }

    #[inline]
    fn available(&self, s: &State, point: u8) -> bool {
        s.visited & (1u128 << point) == 0 || point == s.pos
    }

    /// Dead-end test after leaving `old`. Only the neighbourhood of `old`
    /// lost availability, so only it is examined.
    fn strands_something(&self, s: &State, old: u8) -> bool {
        match self.kind {
            PathKind::S => {
                let used = self.edge_tiles[old as usize][s.last];
                // the exit point must lead into some unused tile
                if !self.point_tiles[s.pos as usize].iter().any(|&t| s.tiles & (1u128 << t) == 0) {
                    return true;
                }
                self.tile_corners[used as usize]
                    .iter()
                    .flat_map(|&c| self.point_tiles[c as usize].iter())
                    .any(|&t| s.tiles & (1u128 << t) == 0 && self.stranded_tile(s, t))
            }
            PathKind::H | PathKind::W => {
                self.neighbors[old as usize].iter().any(|&u| {
                    u != NONE && u != s.pos && s.visited & (1u128 << u) == 0 && self.stranded_vertex(s, u)
                }) || !self.free_points_connected(s)
            }
        }
    }

    /// Flood fill from the head over unvisited points.
    fn free_points_connected(&self, s: &State) -> bool {
        let free = self.all_points & !s.visited;
        let mut reached = self.neighbor_masks[s.pos as usize] & free;
        let mut frontier = reached;
        while frontier != 0 {
            let mut grown = 0u128;
            let mut f = frontier;
            while f != 0 {
                grown |= self.neighbor_masks[f.trailing_zeros() as usize];
                f &= f - 1;
            }
            frontier = grown & free & !reached;
            reached |= frontier;
        }
        reached == free
    }

    /// An unused tile needs an entry and an exit corner. A corner serves
    /// only if it is still free and is the head, the terminal point, or
    /// shared with another unused tile.
    fn stranded_tile(&self, s: &State, t: u8) -> bool {
        let usable = self.tile_corners[t as usize]
            .iter()
            .filter(|&&c| {
                self.available(s, c)
                    && (c == s.pos
                        || c == self.end
                        || self.point_tiles[c as usize]
                            .iter()
                            .any(|&u| u != t && s.tiles & (1u128 << u) == 0))
            })
            .count();
        usable < 2
    }

    fn stranded_vertex(&self, s: &State, u: u8) -> bool {
        let mut open = [0usize; 6];
        let mut count = 0;
        for (f, &v) in self.neighbors[u as usize].iter().enumerate() {
            if v != NONE && self.available(s, v) {
                open[count] = f;
                count += 1;
            }
        }
        if u == self.end {
            return count == 0;
        }
        if count < 2 {
            return true;
        }
        if count == 2 && self.kind == PathKind::W {
            // u must be entered through one open side and left through the other
            let (f, g) = (open[0], open[1]);
            let back = |x: usize| (x + 3) % 6;
            return !self.allowed[back(f)][g] && !self.allowed[back(g)][f];
        }
        false
    }

    fn count_from(&self, s: &State) -> u64 {
        if s.depth == self.len {
            return 1;
        }
        let mut total = 0;
        for d in 0..6 {
            if let Some(next) = self.advance(s, d) {
                total += self.count_from(&next);
            }
        }
        total
    }

    fn emit_from(&self, s: &State, buf: &mut Vec<Direction>, sink: &mut dyn FnMut(&[Direction])) {
        if s.depth == self.len {
            sink(buf);
            return;
        }
        for d in 0..6 {
            if let Some(next) = self.advance(s, d) {
                buf.push(Direction::ALL[d]);
                self.emit_from(&next, buf, sink);
                buf.pop();
            }
        }
    }

    /// All viable prefixes of length `min(depth, len)`, in lexicographic order.
    fn tasks(&self, depth: usize) -> Vec<Task> {
        let depth = depth.min(self.len);
        let mut out = Vec::new();
        let mut buf = Vec::new();
        self.collect_prefixes(&self.root(), depth, &mut buf, &mut out);
        out
    }

    fn collect_prefixes(&self, s: &State, depth: usize, buf: &mut Vec<Direction>, out: &mut Vec<Task>) {
        if s.depth == depth {
            out.push(Task { prefix: buf.clone(), state: *s });
            return;
        }
        for d in 0..6 {
            if let Some(next) = self.advance(s, d) {
                buf.push(Direction::ALL[d]);
                self.collect_prefixes(&next, depth, buf, out);
                buf.pop();
            }
        }
    }

    fn run_task(&self, task: &Task) -> Vec<Vec<Direction>> {
        let mut found = Vec::new();
        let mut buf = task.prefix.clone();
        self.emit_from(&task.state, &mut buf, &mut |p| found.push(p.to_vec()));
        found
    }
}

fn pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool")
}

/// Counts paths without materializing them.
pub fn count(kind: PathKind, n: usize, opts: &EnumerateOptions) -> Result<EnumerationReport> {
    count_with_progress(kind, n, opts, |_, _| {})
}

/// Like [`count`], calling `progress(done, total)` after each finished task.
pub fn count_with_progress<F>(
    kind: PathKind,
    n: usize,
    opts: &EnumerateOptions,
    progress: F,
) -> Result<EnumerationReport>
where
    F: Fn(usize, usize) + Sync,
{
    let started = Instant::now();
    let searcher = Searcher::new(kind, n)?;
    let tasks = searcher.tasks(opts.split_depth);
    let done = AtomicUsize::new(0);
    let count = pool(opts.workers).install(|| {
        tasks
            .par_iter()
            .map(|t| {
                let c = searcher.count_from(&t.state);
                progress(done.fetch_add(1, Ordering::Relaxed) + 1, tasks.len());
                c
            })
            .sum()
    });
    Ok(EnumerationReport { order: n, kind, count, elapsed: started.elapsed() })
}

/// Streams every path to `sink` in lexicographic digit order.
pub fn enumerate<F>(kind: PathKind, n: usize, opts: &EnumerateOptions, mut sink: F) -> Result<EnumerationReport>
where
    F: FnMut(PathString),
{
    const BATCH: usize = 64;
    let started = Instant::now();
    let searcher = Searcher::new(kind, n)?;
    let tasks = searcher.tasks(opts.split_depth);
    let mut count = 0u64;
    let pool = pool(opts.workers);
    for batch in tasks.chunks(BATCH) {
        let results: Vec<Vec<Vec<Direction>>> =
            pool.install(|| batch.par_iter().map(|t| searcher.run_task(t)).collect());
        for digits in results.into_iter().flatten() {
            count += 1;
            sink(PathString::new_unchecked(kind, searcher.order, digits));
        }
    }
    Ok(EnumerationReport { order: n, kind, count, elapsed: started.elapsed() })
}

pub fn collect(kind: PathKind, n: usize, opts: &EnumerateOptions) -> Result<Vec<PathString>> {
    let mut out = Vec::new();
    enumerate(kind, n, opts, |p| out.push(p))?;
    Ok(out)
}

/// Counts W-paths on the inscribed grid and S-paths on the overall grid by
/// two separate searches and compares them.
pub fn count_equality_check(n: usize, opts: &EnumerateOptions) -> Result<bool> {
    let w = count(PathKind::W, n, opts)?;
    let s = count(PathKind::S, n, opts)?;
    Ok(w.count == s.count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::{format_digits, validate_h, validate_s, validate_w};

    #[test]
    fn small_counts() {
        let opts = EnumerateOptions::single_threaded();
        assert_eq!(count(PathKind::H, 4, &opts).unwrap().count, 10);
        assert_eq!(count(PathKind::W, 7, &opts).unwrap().count, 464);
        let s2 = collect(PathKind::S, 2, &opts).unwrap();
        assert_eq!(s2.len(), 1);
        assert_eq!(s2[0].to_string(), "105");
    }

    #[test]
    fn equality_check() {
        let opts = EnumerateOptions::default();
        for n in [2, 5] {
            assert!(count_equality_check(n, &opts).unwrap());
        }
    }

    #[test]
    fn order_bounds() {
        let opts = EnumerateOptions::default();
        assert!(matches!(count(PathKind::H, 1, &opts), Err(Error::OrderOutOfRange { .. })));
        assert!(matches!(count(PathKind::S, 13, &opts), Err(Error::OrderOutOfRange { .. })));
    }

    #[test]
    fn emitted_paths_are_valid_and_sorted() {
        let opts = EnumerateOptions::default();
        for n in 2..=5 {
            for (kind, valid) in [
                (PathKind::H, validate_h as fn(&[Direction], usize) -> bool),
                (PathKind::W, validate_w),
                (PathKind::S, validate_s),
            ] {
                let paths: Vec<String> = collect(kind, n, &opts)
                    .unwrap()
                    .iter()
                    .inspect(|p| assert!(valid(p.digits(), n), "{kind} {p}"))
                    .map(|p| format_digits(p.digits()))
                    .collect();
                let mut sorted = paths.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(paths, sorted);
            }
        }
    }

    #[test]
    fn split_depth_does_not_change_stream() {
        let base = collect(PathKind::W, 6, &EnumerateOptions { workers: 1, split_depth: 0 }).unwrap();
        for split in [1, 3, 7, 40] {
            let opts = EnumerateOptions { workers: 2, split_depth: split };
            assert_eq!(collect(PathKind::W, 6, &opts).unwrap(), base);
        }
    }

    #[test]
    fn summary_flags_orders_without_reference() {
        let r = EnumerationReport {
            order: 10,
            kind: PathKind::W,
            count: 1,
            elapsed: Duration::ZERO,
        };
        assert!(r.summary().unverified);
        assert_eq!(r.matches_reference(), None);
        assert_eq!(reference_count(PathKind::H, 9), Some(1255156712));
    }
}
