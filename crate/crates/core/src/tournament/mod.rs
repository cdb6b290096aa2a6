//! Immutable tournaments stored as one orientation bit per unordered pair.
//!
//! Vertices are `0..n`. The pair `{u, v}` with `u < v` owns bit
//! `pair_index(n, u, v)` in row-major order over the upper triangle; the bit
//! is set iff the arc is `u -> v`.

mod codec;
mod iso;
pub mod paths;

pub use iso::{automorphism_count, canonical_form, classify_small, isomorphism, CanonicalForm};
pub use iso::{deletion_critical, deletion_partner, is_grunbaum, MAX_ISO_ORDER};
pub use iso::{ExceptionClass, ExceptionKind};
pub use paths::StrongDecomposition;

use crate::error::TournamentError;

/// Largest supported order.
pub const MAX_ORDER: usize = 1 << 16;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    bits: Vec<u64>,
    out_deg: Vec<u32>,
}

#[inline]
pub(crate) fn pair_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

#[inline]
pub(crate) fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl Tournament {
    /// Builds a tournament from an explicit arc set.
    ///
    /// Every unordered pair must appear exactly once, in one orientation.
    pub fn build<I>(n: usize, arcs: I) -> Result<Self, TournamentError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 || n > MAX_ORDER {
            return Err(TournamentError::Order(n));
        }
        let m = pair_count(n);
        let mut seen = vec![false; m];
        let mut t = Self::empty(n);
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(TournamentError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(TournamentError::Loop(u));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            let idx = pair_index(n, a, b);
            if seen[idx] {
                return Err(TournamentError::DuplicatePair(a, b));
            }
            seen[idx] = true;
            if u < v {
                t.bits[idx / 64] |= 1 << (idx % 64);
            }
        }
        if let Some(idx) = seen.iter().position(|s| !s) {
            let (a, b) = pair_at(n, idx);
            return Err(TournamentError::MissingPair(a, b));
        }
        t.recount();
        Ok(t)
    }

    /// Builds a tournament from a predicate deciding `u -> v` for every `u < v`.
    pub fn from_fn(n: usize, mut forward: impl FnMut(usize, usize) -> bool) -> Self {
        assert!((1..=MAX_ORDER).contains(&n), "tournament order {n} out of range");
        let mut t = Self::empty(n);
        let mut idx = 0;
        for u in 0..n {
            for v in u + 1..n {
                if forward(u, v) {
                    t.bits[idx / 64] |= 1 << (idx % 64);
                }
                idx += 1;
            }
        }
        t.recount();
        t
    }

    /// Builds from raw pair bits in row-major order (bit `k` of the stream is pair `k`).
    pub(crate) fn from_pair_bits(n: usize, bits: Vec<u64>) -> Self {
        debug_assert_eq!(bits.len(), pair_count(n).div_ceil(64).max(1));
        let mut t = Tournament { n, bits, out_deg: vec![0; n] };
        t.recount();
        t
    }

    fn empty(n: usize) -> Self {
        Tournament {
            n,
            bits: vec![0; pair_count(n).div_ceil(64).max(1)],
            out_deg: vec![0; n],
        }
    }

    fn recount(&mut self) {
        let n = self.n;
        let mut deg = vec![0u32; n];
        let mut idx = 0;
        for u in 0..n {
            for v in u + 1..n {
                if self.bits[idx / 64] >> (idx % 64) & 1 == 1 {
                    deg[u] += 1;
                } else {
                    deg[v] += 1;
                }
                idx += 1;
            }
        }
        self.out_deg = deg;
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// True iff `u -> v` is an arc. False for `u == v`.
    #[inline]
    pub fn arc(&self, u: usize, v: usize) -> bool {
        if u < v {
            let idx = pair_index(self.n, u, v);
            self.bits[idx / 64] >> (idx % 64) & 1 == 1
        } else if v < u {
            let idx = pair_index(self.n, v, u);
            self.bits[idx / 64] >> (idx % 64) & 1 == 0
        } else {
            false
        }
    }

    #[inline]
    pub fn out_degree(&self, v: usize) -> usize {
        self.out_deg[v] as usize
    }

    #[inline]
    pub fn in_degree(&self, v: usize) -> usize {
        self.n - 1 - self.out_deg[v] as usize
    }

    pub fn out_neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&w| self.arc(v, w)).collect()
    }

    pub fn in_neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&w| self.arc(w, v)).collect()
    }

    pub fn min_out_degree(&self) -> usize {
        self.out_deg.iter().copied().min().unwrap_or(0) as usize
    }

    pub fn max_out_degree(&self) -> usize {
        self.out_deg.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn min_in_degree(&self) -> usize {
        self.n - 1 - self.max_out_degree()
    }

    pub fn max_in_degree(&self) -> usize {
        self.n - 1 - self.min_out_degree()
    }

    /// Score sequence sorted ascending.
    pub fn score_sequence(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.out_deg.iter().map(|&d| d as usize).collect();
        s.sort_unstable();
        s
    }

    /// All arcs `(u, v)` in row-major pair order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |u| (u + 1..n).map(move |v| if self.arc(u, v) { (u, v) } else { (v, u) }))
    }

    /// Reverses every arc.
    pub fn complement(&self) -> Tournament {
        let m = pair_count(self.n);
        let mut bits: Vec<u64> = self.bits.iter().map(|w| !w).collect();
        if !m.is_multiple_of(64) {
            let last = bits.len() - 1;
            bits[last] &= (1u64 << (m % 64)) - 1;
        } else if m == 0 {
            bits[0] = 0;
        }
        let out_deg = self.out_deg.iter().map(|&d| (self.n - 1) as u32 - d).collect();
        Tournament { n: self.n, bits, out_deg }
    }

    /// Subtournament induced by `set`, relabelled order-preservingly.
    ///
    /// Returns the subtournament and the relabel map (`map[k]` is the
    /// original vertex now called `k`).
    pub fn induced(&self, set: &[usize]) -> Result<(Tournament, Vec<usize>), TournamentError> {
        if set.is_empty() {
            return Err(TournamentError::EmptySubset);
        }
        let mut map = set.to_vec();
        map.sort_unstable();
        for w in map.windows(2) {
            if w[0] == w[1] {
                return Err(TournamentError::DuplicateVertex(w[0]));
            }
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= self.n) {
            return Err(TournamentError::VertexOutOfRange { vertex: bad, n: self.n });
        }
        let sub = Tournament::from_fn(map.len(), |a, b| self.arc(map[a], map[b]));
        Ok((sub, map))
    }

    /// Subtournament on `verts` in the given order (no sorting, no checks).
    pub(crate) fn induced_ordered(&self, verts: &[usize]) -> Tournament {
        Tournament::from_fn(verts.len(), |a, b| self.arc(verts[a], verts[b]))
    }

    /// Result has arc `(a, b)` iff `self.arc(perm[a], perm[b])`.
    pub fn relabel(&self, perm: &[usize]) -> Tournament {
        assert_eq!(perm.len(), self.n);
        self.induced_ordered(perm)
    }

    pub fn is_strong(&self) -> bool {
        self.strong_decomposition().components.len() == 1
    }

    pub fn strong_decomposition(&self) -> StrongDecomposition {
        let verts: Vec<usize> = (0..self.n).collect();
        StrongDecomposition {
            components: paths::strong_components(&|u, v| self.arc(u, v), &verts),
        }
    }

    /// Directed Hamiltonian path built by binary-search insertion.
    pub fn hamiltonian_directed_path(&self) -> Vec<usize> {
        let verts: Vec<usize> = (0..self.n).collect();
        paths::hamiltonian_path(&|u, v| self.arc(u, v), &verts)
    }

    pub fn hamiltonian_circuit(&self) -> Result<Vec<usize>, TournamentError> {
        if self.n < 3 {
            return Err(TournamentError::CircuitTooSmall(self.n));
        }
        let verts: Vec<usize> = (0..self.n).collect();
        paths::hamiltonian_cycle(&|u, v| self.arc(u, v), &verts).ok_or_else(|| {
            TournamentError::NotStrong(self.strong_decomposition().components.len())
        })
    }

    /// Directed path ending at `x` whose vertex set is the union of the
    /// strong components up to and including the one holding `x`.
    pub fn directed_path_ending_at(&self, x: usize) -> Vec<usize> {
        assert!(x < self.n);
        let verts: Vec<usize> = (0..self.n).collect();
        paths::directed_path_ending_at(&|u, v| self.arc(u, v), &verts, x)
    }

    // Named tournaments.

    pub fn cyclic_triangle() -> Tournament {
        Tournament::rotational(3)
    }

    /// `u -> v` whenever `u < v`.
    pub fn transitive(n: usize) -> Tournament {
        Tournament::from_fn(n, |_, _| true)
    }

    /// Source `0` dominating the cyclic triangle `1 -> 2 -> 3 -> 1`.
    pub fn t4_plus() -> Tournament {
        Tournament::build(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]).expect("valid")
    }

    /// Odd `n`: `i -> i + s (mod n)` for `s = 1..=n/2`. Regular.
    pub fn rotational(n: usize) -> Tournament {
        assert!(n % 2 == 1, "rotational tournaments need odd order");
        Tournament::from_fn(n, |u, v| v - u <= n / 2)
    }

    /// Paley tournament on 7 vertices: `i -> j` iff `j - i` is 1, 2 or 4 mod 7.
    pub fn paley7() -> Tournament {
        Tournament::from_fn(7, |u, v| matches!((v - u) % 7, 1 | 2 | 4))
    }

    pub(crate) fn raw_bits(&self) -> &[u64] {
        &self.bits
    }
}

fn pair_at(n: usize, mut idx: usize) -> (usize, usize) {
    for u in 0..n {
        let row = n - u - 1;
        if idx < row {
            return (u, u + 1 + idx);
        }
        idx -= row;
    }
    unreachable!("pair index out of range")
}

impl std::fmt::Debug for Tournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tournament({})", self.to_code())
    }
}
