use serde::{Deserialize, Serialize};

use crate::pattern::{Dir, PathPattern};
use crate::tournament::Tournament;

/// The four witness-equivalent rewrites of an instance `(T, P)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VariantTag {
    /// `(T, P)`
    V1,
    /// `(T̄, P̄)`
    V2,
    /// `(T, P̃)`
    V3,
    /// `(T̄, complement of P̃)`
    V4,
}

impl VariantTag {
    pub const ALL: [VariantTag; 4] = [VariantTag::V1, VariantTag::V2, VariantTag::V3, VariantTag::V4];

    pub fn complemented(self) -> bool {
        matches!(self, VariantTag::V2 | VariantTag::V4)
    }

    pub fn reversed(self) -> bool {
        matches!(self, VariantTag::V3 | VariantTag::V4)
    }

    pub fn pattern(self, p: &PathPattern) -> PathPattern {
        let q = if self.reversed() { p.reverse() } else { p.clone() };
        if self.complemented() {
            q.complement()
        } else {
            q
        }
    }

    /// Maps a copy found in the rewritten instance back to the original.
    pub fn undo(self, mut seq: Vec<usize>) -> Vec<usize> {
        if self.reversed() {
            seq.reverse();
        }
        seq
    }
}

impl std::fmt::Display for VariantTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Degrees {
    pub min_in: usize,
    pub max_in: usize,
    pub min_out: usize,
    pub max_out: usize,
}

impl Degrees {
    pub fn from_in(indeg: &[usize]) -> Self {
        let n = indeg.len();
        let min_in = indeg.iter().copied().min().unwrap_or(0);
        let max_in = indeg.iter().copied().max().unwrap_or(0);
        Degrees { min_in, max_in, min_out: n.saturating_sub(1) - max_in, max_out: n.saturating_sub(1) - min_in }
    }

    /// `(Δ⁺, Δ⁻, δ⁻)` of the rewritten tournament.
    fn of(self, tag: VariantTag) -> (usize, usize, usize) {
        if tag.complemented() {
            (self.max_in, self.max_out, self.min_out)
        } else {
            (self.max_out, self.max_in, self.min_in)
        }
    }

    pub fn qualifies(self, tag: VariantTag, pat: &PathPattern) -> bool {
        let (dplus, dminus, min_in) = self.of(tag);
        dplus >= dminus && min_in >= 1 && min_in < pat.order() && pat.dir(min_in - 1) == Dir::F
    }

    /// First qualifying variant, with its rewritten pattern.
    pub fn first_qualifying(self, p: &PathPattern) -> Option<(VariantTag, PathPattern)> {
        VariantTag::ALL.into_iter().map(|tag| (tag, tag.pattern(p))).find(|(tag, q)| self.qualifies(*tag, q))
    }

    /// Variant with the largest maximum out-degree, earliest on ties.
    pub fn widest(self) -> VariantTag {
        let mut best = VariantTag::V1;
        for tag in VariantTag::ALL {
            if self.of(tag).0 > self.of(best).0 {
                best = tag;
            }
        }
        best
    }
}

/// A rewritten instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariantChoice {
    pub tag: VariantTag,
    pub tournament: Tournament,
    pub pattern: PathPattern,
    /// `false` when no variant satisfies both the degree and the arc
    /// condition; `tag` is then the variant with the widest out-degree.
    pub qualifies: bool,
}

impl VariantChoice {
    pub fn undo(&self, seq: &[usize]) -> Vec<usize> {
        self.tag.undo(seq.to_vec())
    }
}

/// First of `V1..V4` with `Δ⁺ ≥ Δ⁻` whose pattern has a forward arc leaving
/// position `δ⁻`.
pub fn choose_variant(t: &Tournament, p: &PathPattern) -> VariantChoice {
    let indeg: Vec<usize> = (0..t.order()).map(|v| t.in_degree(v)).collect();
    let deg = Degrees::from_in(&indeg);
    let (tag, qualifies) = match deg.first_qualifying(p) {
        Some((tag, _)) => (tag, true),
        None => (deg.widest(), false),
    };
    let tournament = if tag.complemented() { t.complement() } else { t.clone() };
    VariantChoice { tag, tournament, pattern: tag.pattern(p), qualifies }
}
