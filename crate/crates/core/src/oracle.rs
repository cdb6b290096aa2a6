//! Exact ground truth: exhaustive backtracking search for copies of a
//! pattern, counting, and the memoized base solver used by the embedder for
//! small sub-instances.

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::error::EmbedError;
use crate::pattern::{Dir, PathPattern};
use crate::tournament::{canonical_form, CanonicalForm, Tournament};

/// Restrictions on the first vertex of a copy.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OriginConstraint {
    pub required_origin: Option<usize>,
    pub forbidden_origins: Vec<usize>,
}

impl OriginConstraint {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn origin(v: usize) -> Self {
        OriginConstraint { required_origin: Some(v), forbidden_origins: Vec::new() }
    }

    pub fn forbid(vs: impl IntoIterator<Item = usize>) -> Self {
        OriginConstraint { required_origin: None, forbidden_origins: vs.into_iter().collect() }
    }

    pub fn is_none(&self) -> bool {
        self.required_origin.is_none() && self.forbidden_origins.is_empty()
    }

    pub fn check(&self) -> Result<(), EmbedError> {
        match self.required_origin {
            Some(r) if self.forbidden_origins.contains(&r) => {
                Err(EmbedError::Constraint("required origin is also forbidden"))
            }
            _ => Ok(()),
        }
    }

    pub fn allows(&self, v: usize) -> bool {
        self.required_origin.is_none_or(|r| r == v) && !self.forbidden_origins.contains(&v)
    }
}

fn check_sizes(t: &Tournament, p: &PathPattern) -> Result<(), EmbedError> {
    if t.order() != p.order() {
        return Err(EmbedError::SizeMismatch { tournament: t.order(), pattern: p.order() });
    }
    Ok(())
}

#[inline]
fn fits(t: &Tournament, d: Dir, prev: usize, next: usize) -> bool {
    match d {
        Dir::F => t.arc(prev, next),
        Dir::B => t.arc(next, prev),
    }
}

struct Search<'a> {
    t: &'a Tournament,
    dirs: &'a [Dir],
    used: Vec<bool>,
    seq: Vec<usize>,
}

impl Search<'_> {
    // Extends `seq` one position at a time, lowest vertex first. A branch dies
    // as soon as the next direction has no unused neighbour.
    fn first(&mut self) -> bool {
        let k = self.seq.len();
        if k == self.t.order() {
            return true;
        }
        let prev = self.seq[k - 1];
        let d = self.dirs[k - 1];
        for w in 0..self.t.order() {
            if !self.used[w] && fits(self.t, d, prev, w) {
                self.used[w] = true;
                self.seq.push(w);
                if self.first() {
                    return true;
                }
                self.seq.pop();
                self.used[w] = false;
            }
        }
        false
    }

    fn count(&mut self) -> u64 {
        let k = self.seq.len();
        if k == self.t.order() {
            return 1;
        }
        let prev = self.seq[k - 1];
        let d = self.dirs[k - 1];
        let mut total = 0;
        for w in 0..self.t.order() {
            if !self.used[w] && fits(self.t, d, prev, w) {
                self.used[w] = true;
                self.seq.push(w);
                total += self.count();
                self.seq.pop();
                self.used[w] = false;
            }
        }
        total
    }
}

/// Lowest-index copy of `p` in `t` satisfying `c`, or `None` if there is none.
pub fn oracle_embed(
    t: &Tournament,
    p: &PathPattern,
    c: &OriginConstraint,
) -> Result<Option<Vec<usize>>, EmbedError> {
    check_sizes(t, p)?;
    c.check()?;
    let n = t.order();
    let mut s = Search { t, dirs: p.dirs(), used: vec![false; n], seq: Vec::with_capacity(n) };
    for start in 0..n {
        if !c.allows(start) {
            continue;
        }
        s.used[start] = true;
        s.seq.push(start);
        if s.first() {
            return Ok(Some(s.seq));
        }
        s.seq.pop();
        s.used[start] = false;
    }
    Ok(None)
}

/// Number of vertex sequences realizing `p` in `t`.
pub fn count_embeddings(t: &Tournament, p: &PathPattern) -> Result<u64, EmbedError> {
    count_with_origin(t, p, &OriginConstraint::none())
}

/// Number of copies whose origin satisfies `c`.
pub fn count_with_origin(t: &Tournament, p: &PathPattern, c: &OriginConstraint) -> Result<u64, EmbedError> {
    check_sizes(t, p)?;
    c.check()?;
    let n = t.order();
    let mut s = Search { t, dirs: p.dirs(), used: vec![false; n], seq: Vec::with_capacity(n) };
    let mut total = 0;
    for start in (0..n).filter(|&v| c.allows(v)) {
        s.used[start] = true;
        s.seq.push(start);
        total += s.count();
        s.seq.pop();
        s.used[start] = false;
    }
    Ok(total)
}

/// Largest order handled by the base solver.
pub const BASE_LIMIT: usize = 8;

/// Default number of cached entries per order before that order's cache is
/// dropped wholesale.
pub const DEFAULT_CACHE_CAPACITY: usize = 1 << 20;

/// Canonical labelling of a small tournament, computed once and reused for
/// many pattern queries.
#[derive(Debug, Clone)]
pub struct Prepared {
    canon: CanonicalForm,
    inverse: Vec<usize>,
}

impl Prepared {
    pub fn new(t: &Tournament) -> Result<Self, EmbedError> {
        if t.order() > BASE_LIMIT {
            return Err(EmbedError::TooLarge { n: t.order(), limit: BASE_LIMIT });
        }
        let canon = canonical_form(t)?;
        let inverse = canon.inverse();
        Ok(Prepared { canon, inverse })
    }

    pub fn order(&self) -> usize {
        self.canon.n
    }

    pub fn code(&self) -> u32 {
        self.canon.code
    }
}

/// Memoized exact solver for tournaments on at most [`BASE_LIMIT`] vertices.
///
/// Entries are keyed by the canonical code of the tournament together with
/// the pattern and the origin constraint expressed in canonical labels, so
/// isomorphic queries share one entry. Each order has its own map; when a
/// map exceeds its capacity it is cleared.
pub struct BaseSolver {
    shards: Vec<DashMap<u64, Option<Vec<u8>>>>,
    capacity: usize,
}

impl Default for BaseSolver {
    fn default() -> Self {
        Self::new(DEFAULT_CACHE_CAPACITY)
    }
}

impl BaseSolver {
    pub fn new(capacity: usize) -> Self {
        BaseSolver { shards: (0..=BASE_LIMIT).map(|_| DashMap::new()).collect(), capacity }
    }

    pub fn cached_entries(&self, n: usize) -> usize {
        self.shards.get(n).map_or(0, DashMap::len)
    }

    pub fn solve(
        &self,
        t: &Tournament,
        p: &PathPattern,
        c: &OriginConstraint,
    ) -> Result<Option<Vec<usize>>, EmbedError> {
        check_sizes(t, p)?;
        let prep = Prepared::new(t)?;
        self.solve_prepared(&prep, p, c)
    }

    pub fn solve_prepared(
        &self,
        prep: &Prepared,
        p: &PathPattern,
        c: &OriginConstraint,
    ) -> Result<Option<Vec<usize>>, EmbedError> {
        let n = prep.order();
        if p.order() != n {
            return Err(EmbedError::SizeMismatch { tournament: n, pattern: p.order() });
        }
        c.check()?;
        if let Some(&bad) = c.required_origin.iter().chain(&c.forbidden_origins).find(|&&v| v >= n) {
            return Err(EmbedError::Tournament(crate::TournamentError::VertexOutOfRange { vertex: bad, n }));
        }
        let required = c.required_origin.map_or(0xff, |v| prep.inverse[v] as u64);
        let forbidden = c.forbidden_origins.iter().fold(0u64, |m, &v| m | 1 << prep.inverse[v]);
        let key = (n as u64) << 60
            | u64::from(prep.canon.code) << 28
            | p.to_index() << 16
            | required << 8
            | forbidden;
        let shard = &self.shards[n];
        let hit = shard.get(&key).map(|e| e.value().clone());
        let canonical = match hit {
            Some(v) => v,
            None => {
                let ct = prep.canon.tournament();
                let cc = OriginConstraint {
                    required_origin: c.required_origin.map(|v| prep.inverse[v]),
                    forbidden_origins: c.forbidden_origins.iter().map(|&v| prep.inverse[v]).collect(),
                };
                let found = oracle_embed(&ct, p, &cc)?.map(|s| s.into_iter().map(|v| v as u8).collect::<Vec<u8>>());
                if shard.len() >= self.capacity {
                    shard.clear();
                }
                shard.insert(key, found.clone());
                found
            }
        };
        Ok(canonical.map(|s| s.into_iter().map(|k| prep.canon.perm[k as usize]).collect()))
    }
}
