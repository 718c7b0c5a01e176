//! L-system export of W-path generators and a turtle interpreter.
//!
//! Each consecutive digit pair of the zero-supplemented W string maps to a
//! symbol group (one drawing symbol with optional turns). The ER rule set is
//! `A → groups`, `B → mirror(A)`; the NR rule set joins the same groups with
//! `F` and renames `A, B` to `X, Y`.
//!
//! Turtle convention: heading starts at 0°, `+` turns clockwise by the rule
//! set's angle and `-` turns counterclockwise.

use crate::bijection::{transition, Cell};
use crate::error::{Error, Result};
use crate::lattice::Direction;
use crate::paths::{supplement, PathKind, PathString};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    A,
    B,
    F,
    X,
    Y,
    Plus,
    Minus,
}

impl Symbol {
    pub fn from_char(c: char) -> Option<Symbol> {
        Some(match c {
            'A' => Symbol::A,
            'B' => Symbol::B,
            'F' => Symbol::F,
            'X' => Symbol::X,
            'Y' => Symbol::Y,
            '+' => Symbol::Plus,
            '-' => Symbol::Minus,
            _ => return None,
        })
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::A => 'A',
            Symbol::B => 'B',
            Symbol::F => 'F',
            Symbol::X => 'X',
            Symbol::Y => 'Y',
            Symbol::Plus => '+',
            Symbol::Minus => '-',
        }
    }

    pub fn draws(self) -> bool {
        matches!(self, Symbol::A | Symbol::B | Symbol::F)
    }

    fn mirrored(self) -> Symbol {
        match self {
            Symbol::A => Symbol::B,
            Symbol::B => Symbol::A,
            Symbol::X => Symbol::Y,
            Symbol::Y => Symbol::X,
            Symbol::Plus => Symbol::Minus,
            Symbol::Minus => Symbol::Plus,
            Symbol::F => Symbol::F,
        }
    }

    fn renamed_for_nr(self) -> Symbol {
        match self {
            Symbol::A => Symbol::X,
            Symbol::B => Symbol::Y,
            other => other,
        }
    }
}

pub type Word = Vec<Symbol>;

pub fn parse_word(text: &str) -> Option<Word> {
    text.chars().map(Symbol::from_char).collect()
}

pub fn format_word(word: &[Symbol]) -> String {
    word.iter().map(|s| s.as_char()).collect()
}

#[rustfmt::skip]
const GROUPS: [[&str; 6]; 6] = [
    ["A",   "-B",  "-B-", "",    "",    "A+" ],
    ["+A",  "B",   "B-",  "",    "",    "+A+"],
    ["",    "A+",  "A",   "-B",  "-B-", ""   ],
    ["",    "+A+", "+A",  "B",   "B-",  ""   ],
    ["-B-", "",    "",    "A+",  "A",   "-B" ],
    ["B-",  "",    "",    "+A+", "+A",  "B"  ],
];

/// Symbol group for the W digit pair `(a, b)`.
pub fn group(a: Direction, b: Direction) -> Cell<&'static str> {
    match GROUPS[a.code() as usize][b.code() as usize] {
        "" => Cell::Blocked,
        group => Cell::Value(group),
    }
}

/// Swaps `A↔B`, `X↔Y` and `+↔−`, keeping symbol order.
pub fn mirror(rule: &[Symbol]) -> Word {
    rule.iter().map(|s| s.mirrored()).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LSystem {
    pub axiom: Word,
    pub productions: Vec<(Symbol, Word)>,
    pub angle_degrees: f64,
}

impl LSystem {
    pub fn production(&self, var: Symbol) -> Option<&[Symbol]> {
        self.productions
            .iter()
            .find(|(v, _)| *v == var)
            .map(|(_, w)| w.as_slice())
    }

    /// Rewrites the axiom `k` times.
    pub fn expand(&self, k: u32) -> Word {
        let mut word = self.axiom.clone();
        for _ in 0..k {
            let mut next = Vec::with_capacity(word.len() * 4);
            for &s in &word {
                match self.production(s) {
                    Some(rhs) => next.extend_from_slice(rhs),
                    None => next.push(s),
                }
            }
            word = next;
        }
        word
    }

    /// One production per line, e.g. `A=-B+A+B-`.
    pub fn to_text(&self) -> String {
        self.productions
            .iter()
            .map(|(v, w)| format!("{}={}\n", v.as_char(), format_word(w)))
            .collect()
    }
}

impl fmt::Display for LSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// An ER rule set together with the per-pair symbol groups it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct ErRules {
    groups: Vec<Word>,
    system: LSystem,
}

impl ErRules {
    pub fn groups(&self) -> &[Word] {
        &self.groups
    }

    pub fn system(&self) -> &LSystem {
        &self.system
    }
}

pub fn er_rules(w: &PathString) -> Result<ErRules> {
    if w.kind() != PathKind::W {
        return Err(Error::InvalidPath {
            kind: w.kind().letter(),
            order: w.order(),
            reason: "L-system rules are built from W-paths".into(),
        });
    }
    let groups = supplement(w.digits())
        .windows(2)
        .enumerate()
        .map(|(index, p)| match group(p[0], p[1]) {
            Cell::Value(g) => Ok(parse_word(g).expect("table symbols")),
            Cell::Blocked => Err(Error::BlockedPair { index, pair: (p[0], p[1]) }),
        })
        .collect::<Result<Vec<Word>>>()?;
    let a: Word = groups.concat();
    let b = mirror(&a);
    Ok(ErRules {
        groups,
        system: LSystem {
            axiom: vec![Symbol::A],
            productions: vec![(Symbol::A, a), (Symbol::B, b)],
            angle_degrees: 60.0,
        },
    })
}

pub fn nr_rules(er: &ErRules) -> LSystem {
    let mut x = Word::new();
    for (i, group) in er.groups.iter().enumerate() {
        if i > 0 {
            x.push(Symbol::F);
        }
        x.extend(group.iter().map(|s| s.renamed_for_nr()));
    }
    let y = mirror(&x);
    LSystem {
        axiom: vec![Symbol::X],
        productions: vec![(Symbol::X, x), (Symbol::Y, y)],
        angle_degrees: er.system.angle_degrees,
    }
}

/// A drawn segment: the symbol that drew it and its heading in units of the
/// turn angle (reduced modulo a full turn when the angle divides 360°).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stroke {
    pub symbol: Symbol,
    pub heading: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TurtleTrace {
    pub points: Vec<(f64, f64)>,
    pub strokes: Vec<Stroke>,
}

/// Interprets a word from `start` with heading 0.
pub fn interpret(word: &[Symbol], angle_degrees: f64, start: (f64, f64)) -> TurtleTrace {
    let steps_per_turn = (360.0 / angle_degrees).round() as i64;
    let periodic = ((steps_per_turn as f64) * angle_degrees - 360.0).abs() < 1e-9;
    let mut heading: i64 = 0;
    let (mut x, mut y) = start;
    let mut points = vec![start];
    let mut strokes = Vec::new();
    for &s in word {
        match s {
            Symbol::Plus => heading -= 1,
            Symbol::Minus => heading += 1,
            Symbol::A | Symbol::B | Symbol::F => {
                if periodic {
                    heading = heading.rem_euclid(steps_per_turn);
                }
                let theta = (heading as f64 * angle_degrees).to_radians();
                x += theta.cos();
                y += theta.sin();
                points.push((x, y));
                strokes.push(Stroke { symbol: s, heading });
            }
            Symbol::X | Symbol::Y => {}
        }
    }
    TurtleTrace { points, strokes }
}

/// Expands `k` times and walks the result from the origin.
pub fn expand_and_walk(system: &LSystem, k: u32) -> Vec<(f64, f64)> {
    interpret(&system.expand(k), system.angle_degrees, (0.0, 0.0)).points
}

/// Checks the group table against the W ↔ S table: same blocked cells, and the
/// drawing symbol is `A` exactly where the S digit is even.
pub fn self_check() -> std::result::Result<(), String> {
    for a in Direction::ALL {
        for b in Direction::ALL {
            match (transition(a, b), group(a, b)) {
                (Cell::Blocked, Cell::Blocked) => {}
                (Cell::Value(s), Cell::Value(g)) => {
                    let letter = if s.is_even() { 'A' } else { 'B' };
                    let letters: Vec<char> = g.chars().filter(|c| c.is_alphabetic()).collect();
                    if letters != [letter] {
                        return Err(format!("cell ({a},{b}) = {g:?} but S digit {s} needs {letter}"));
                    }
                }
                _ => return Err(format!("cell ({a},{b}) blocked in only one table")),
            }
        }
    }
    Ok(())
}
