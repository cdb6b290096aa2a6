//! Oriented path patterns.
//!
//! A pattern on `n` vertices `x_0 .. x_{n-1}` is the sequence of its `n - 1`
//! arc directions: `F` at index `k` means `x_k -> x_{k+1}`, `B` means
//! `x_{k+1} -> x_k`. Positions are 0-based throughout the crate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::PatternError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dir {
    F,
    B,
}

impl Dir {
    #[inline]
    pub fn flip(self) -> Dir {
        match self {
            Dir::F => Dir::B,
            Dir::B => Dir::F,
        }
    }

    pub fn sign(self) -> char {
        match self {
            Dir::F => '+',
            Dir::B => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shape {
    Directed,
    Antidirected,
    General,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathPattern {
    dirs: Vec<Dir>,
}

impl PathPattern {
    pub fn from_dirs(dirs: Vec<Dir>) -> Self {
        PathPattern { dirs }
    }

    /// Single-vertex pattern.
    pub fn trivial() -> Self {
        PathPattern { dirs: Vec::new() }
    }

    pub fn directed(n: usize) -> Self {
        PathPattern { dirs: vec![Dir::F; n.saturating_sub(1)] }
    }

    /// `P+(b1, ..., bm)` when `positive`, else `P-(...)`.
    pub fn from_blocks(positive: bool, blocks: &[usize]) -> Result<Self, PatternError> {
        if blocks.is_empty() {
            return Err(PatternError::NoBlocks);
        }
        let mut dirs = Vec::with_capacity(blocks.iter().sum());
        let mut d = if positive { Dir::F } else { Dir::B };
        for (k, &b) in blocks.iter().enumerate() {
            if b == 0 {
                return Err(PatternError::ZeroBlock(k));
            }
            dirs.extend(std::iter::repeat_n(d, b));
            d = d.flip();
        }
        Ok(PathPattern { dirs })
    }

    /// The `index`-th pattern on `n` vertices: bit `n-2-k` of `index` set
    /// means `B` at arc `k`, so index 0 is the forward directed path.
    pub fn from_index(n: usize, index: u64) -> Self {
        let m = n.saturating_sub(1);
        let dirs = (0..m)
            .map(|k| if index >> (m - 1 - k) & 1 == 1 { Dir::B } else { Dir::F })
            .collect();
        PathPattern { dirs }
    }

    pub fn to_index(&self) -> u64 {
        self.dirs.iter().fold(0u64, |acc, d| acc << 1 | u64::from(*d == Dir::B))
    }

    /// All `2^(n-1)` patterns on `n` vertices in index order.
    pub fn all(n: usize) -> impl Iterator<Item = PathPattern> {
        let m = n.saturating_sub(1) as u32;
        (0..1u64 << m).map(move |i| PathPattern::from_index(n, i))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.dirs.len() + 1
    }

    #[inline]
    pub fn dirs(&self) -> &[Dir] {
        &self.dirs
    }

    #[inline]
    pub fn dir(&self, k: usize) -> Dir {
        self.dirs[k]
    }

    /// `true` for `P+`, including the single-vertex pattern.
    pub fn is_positive(&self) -> bool {
        self.dirs.first().is_none_or(|&d| d == Dir::F)
    }

    /// Maximal constant runs of arc directions.
    pub fn blocks(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        let mut prev = None;
        for &d in &self.dirs {
            if Some(d) == prev {
                *out.last_mut().expect("nonempty") += 1;
            } else {
                out.push(1);
                prev = Some(d);
            }
        }
        out
    }

    /// Length of the block starting at arc `k` (the run of `dirs[k]`).
    pub fn run_from(&self, k: usize) -> usize {
        let d = self.dirs[k];
        self.dirs[k..].iter().take_while(|&&e| e == d).count()
    }

    pub fn shape(&self) -> Shape {
        let blocks = self.blocks();
        if blocks.len() <= 1 {
            Shape::Directed
        } else if blocks.iter().all(|&b| b == 1) {
            Shape::Antidirected
        } else {
            Shape::General
        }
    }

    pub fn is_directed(&self) -> bool {
        self.dirs.windows(2).all(|w| w[0] == w[1])
    }

    /// Every block has length one (vacuously true for fewer than three vertices).
    pub fn is_antidirected(&self) -> bool {
        self.dirs.windows(2).all(|w| w[0] != w[1])
    }

    /// The pattern read from the other end.
    pub fn reverse(&self) -> Self {
        PathPattern { dirs: self.dirs.iter().rev().map(|d| d.flip()).collect() }
    }

    pub fn complement(&self) -> Self {
        PathPattern { dirs: self.dirs.iter().map(|d| d.flip()).collect() }
    }

    /// Pattern on positions `i..=j`.
    pub fn subpattern(&self, i: usize, j: usize) -> Result<Self, PatternError> {
        if i > j || j >= self.order() {
            return Err(PatternError::Range(i, j, self.order()));
        }
        Ok(PathPattern { dirs: self.dirs[i..j].to_vec() })
    }

    /// Positions `i..=j` with no bounds check beyond slicing.
    pub(crate) fn slice(&self, i: usize, j: usize) -> Self {
        PathPattern { dirs: self.dirs[i..j].to_vec() }
    }

    /// Deletes interior position `j` and joins its neighbours with one arc of
    /// direction `dir`.
    pub fn delete_bridge(&self, j: usize, dir: Dir) -> Result<Self, PatternError> {
        let n = self.order();
        if j == 0 || j + 1 >= n {
            return Err(PatternError::NotInterior(j, n));
        }
        let mut dirs = Vec::with_capacity(n - 2);
        dirs.extend_from_slice(&self.dirs[..j - 1]);
        dirs.push(dir);
        dirs.extend_from_slice(&self.dirs[j + 1..]);
        Ok(PathPattern { dirs })
    }

    /// No arc of the pattern enters position `k`.
    pub fn is_source(&self, k: usize) -> bool {
        let from_left = k > 0 && self.dirs[k - 1] == Dir::F;
        let from_right = k < self.dirs.len() && self.dirs[k] == Dir::B;
        !from_left && !from_right
    }

    /// No arc of the pattern leaves position `k`.
    pub fn is_sink(&self, k: usize) -> bool {
        let to_left = k > 0 && self.dirs[k - 1] == Dir::B;
        let to_right = k < self.dirs.len() && self.dirs[k] == Dir::F;
        !to_left && !to_right
    }

    /// Positions with in-degree zero and positions with out-degree zero.
    pub fn sources_sinks(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.order();
        if n == 1 {
            return (vec![0], vec![0]);
        }
        (
            (0..n).filter(|&k| self.is_source(k)).collect(),
            (0..n).filter(|&k| self.is_sink(k)).collect(),
        )
    }

    /// Sign string over `+` / `-`.
    pub fn sign_string(&self) -> String {
        self.dirs.iter().map(|d| d.sign()).collect()
    }

    /// `P+(1,2)` style; `None` for the single-vertex pattern.
    pub fn block_form(&self) -> Option<String> {
        let blocks = self.blocks();
        if blocks.is_empty() {
            return None;
        }
        let body: Vec<String> = blocks.iter().map(usize::to_string).collect();
        Some(format!("P{}({})", if self.is_positive() { '+' } else { '-' }, body.join(",")))
    }
}

impl fmt::Display for PathPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.sign_string())
    }
}

impl FromStr for PathPattern {
    type Err = PatternError;

    /// `signstring := [+-]*` (with `F`/`B` and the Unicode minus accepted),
    /// or `blockform := "P" [+-] "(" int ("," int)* ")"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let syntax = |why| PatternError::Syntax(s.to_string(), why);
        if let Some(rest) = s.strip_prefix('P') {
            let mut chars = rest.chars();
            let positive = match chars.next() {
                Some('+') => true,
                Some('-') | Some('\u{2212}') => false,
                _ => return Err(syntax("expected sign after P")),
            };
            let body = chars
                .as_str()
                .strip_prefix('(')
                .and_then(|b| b.strip_suffix(')'))
                .ok_or_else(|| syntax("expected parenthesized block list"))?;
            let blocks = body
                .split(',')
                .map(|b| b.trim().parse::<usize>().map_err(|_| syntax("block length is not an integer")))
                .collect::<Result<Vec<_>, _>>()?;
            return PathPattern::from_blocks(positive, &blocks);
        }
        let dirs = s
            .chars()
            .map(|c| match c {
                '+' | 'F' => Ok(Dir::F),
                '-' | 'B' | '\u{2212}' => Ok(Dir::B),
                _ => Err(syntax("expected only +, -, F or B")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PathPattern { dirs })
    }
}

impl Serialize for PathPattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.sign_string())
    }
}

impl<'de> Deserialize<'de> for PathPattern {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
