//! Isomorphism, canonical codes and recognition of the named small
//! tournaments (cyclic triangle, regular 5-tournament, Paley 7-tournament,
//! and the triangle-plus-source `T4+`).

use serde::{Deserialize, Serialize};

use super::Tournament;
use crate::error::TournamentError;

/// Largest order accepted by the permutation-search routines.
pub const MAX_ISO_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExceptionKind {
    T3,
    T4Plus,
    T5,
    T7,
}

impl ExceptionKind {
    pub fn representative(self) -> Tournament {
        match self {
            ExceptionKind::T3 => Tournament::cyclic_triangle(),
            ExceptionKind::T4Plus => Tournament::t4_plus(),
            ExceptionKind::T5 => Tournament::rotational(5),
            ExceptionKind::T7 => Tournament::paley7(),
        }
    }

    pub fn order(self) -> usize {
        match self {
            ExceptionKind::T3 => 3,
            ExceptionKind::T4Plus => 4,
            ExceptionKind::T5 => 5,
            ExceptionKind::T7 => 7,
        }
    }

    /// One of the three tournaments missing an antidirected Hamiltonian path.
    pub fn is_grunbaum(self) -> bool {
        !matches!(self, ExceptionKind::T4Plus)
    }

    pub fn name(self) -> &'static str {
        match self {
            ExceptionKind::T3 => "T3",
            ExceptionKind::T4Plus => "T4+",
            ExceptionKind::T5 => "T5",
            ExceptionKind::T7 => "T7",
        }
    }

    pub fn from_name(s: &str) -> Option<ExceptionKind> {
        Some(match s {
            "T3" => ExceptionKind::T3,
            "T4+" => ExceptionKind::T4Plus,
            "T5" => ExceptionKind::T5,
            "T7" => ExceptionKind::T7,
            _ => return None,
        })
    }
}

impl std::fmt::Display for ExceptionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A recognized named tournament. `iso[k]` is the input vertex playing the
/// role of vertex `k` of [`ExceptionKind::representative`], so
/// `input.arc(iso[a], iso[b]) == rep.arc(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionClass {
    pub kind: ExceptionKind,
    pub iso: Vec<usize>,
}

/// Lexicographically least arc-preserving bijection `f` from `a` to `b`
/// (`a.arc(u, v) == b.arc(f[u], f[v])`), or `None`.
pub fn isomorphism(a: &Tournament, b: &Tournament) -> Result<Option<Vec<usize>>, TournamentError> {
    let n = a.order();
    if n > MAX_ISO_ORDER || b.order() > MAX_ISO_ORDER {
        return Err(TournamentError::IsoTooLarge(n.max(b.order())));
    }
    if n != b.order() || a.score_sequence() != b.score_sequence() {
        return Ok(None);
    }
    let mut map = Vec::with_capacity(n);
    let mut used = 0u32;
    Ok(if extend_iso(a, b, &mut map, &mut used, &mut |_| true) { Some(map) } else { None })
}

/// Number of automorphisms.
pub fn automorphism_count(t: &Tournament) -> Result<usize, TournamentError> {
    if t.order() > MAX_ISO_ORDER {
        return Err(TournamentError::IsoTooLarge(t.order()));
    }
    let mut count = 0;
    let mut map = Vec::with_capacity(t.order());
    let mut used = 0u32;
    extend_iso(t, t, &mut map, &mut used, &mut |_| {
        count += 1;
        false
    });
    Ok(count)
}

// Depth-first assignment of f(0), f(1), ... trying images in increasing
// order. `found` returns true to stop the search.
fn extend_iso(
    a: &Tournament,
    b: &Tournament,
    map: &mut Vec<usize>,
    used: &mut u32,
    found: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let k = map.len();
    if k == a.order() {
        return found(map);
    }
    for img in 0..b.order() {
        if *used >> img & 1 == 1 || a.out_degree(k) != b.out_degree(img) {
            continue;
        }
        if (0..k).all(|j| a.arc(j, k) == b.arc(map[j], img)) {
            map.push(img);
            *used |= 1 << img;
            if extend_iso(a, b, map, used, found) {
                return true;
            }
            *used &= !(1 << img);
            map.pop();
        }
    }
    false
}

/// Recognizes T3, T4+, T5 (any regular 5-tournament) and T7 (Paley).
pub fn classify_small(t: &Tournament) -> Option<ExceptionClass> {
    let n = t.order();
    let kind = match n {
        3 => ExceptionKind::T3,
        4 => ExceptionKind::T4Plus,
        5 => ExceptionKind::T5,
        7 => ExceptionKind::T7,
        _ => return None,
    };
    let rep = kind.representative();
    if t.score_sequence() != rep.score_sequence() {
        return None;
    }
    let iso = isomorphism(&rep, t).ok()??;
    Some(ExceptionClass { kind, iso })
}

/// `t` is one of the three tournaments without an antidirected Hamiltonian path.
pub fn is_grunbaum(t: &Tournament) -> bool {
    matches!(t.order(), 3 | 5 | 7) && classify_small(t).is_some_and(|c| c.kind.is_grunbaum())
}

/// Vertices whose deletion leaves one of T3, T5, T7.
pub fn deletion_critical(t: &Tournament) -> Vec<usize> {
    let n = t.order();
    if !matches!(n, 4 | 6 | 8) {
        return Vec::new();
    }
    (0..n)
        .filter(|&v| {
            let rest: Vec<usize> = (0..n).filter(|&w| w != v).collect();
            is_grunbaum(&t.induced_ordered(&rest))
        })
        .collect()
}

/// Lowest out-neighbour `y` of `x` such that deleting both leaves none of
/// T3, T5, T7.
pub fn deletion_partner(t: &Tournament, x: usize) -> Option<usize> {
    let n = t.order();
    t.out_neighbors(x).into_iter().find(|&y| {
        let rest: Vec<usize> = (0..n).filter(|&w| w != x && w != y).collect();
        !is_grunbaum(&t.induced_ordered(&rest))
    })
}

/// Canonical labelling of a tournament with at most eight vertices.
///
/// `code` is the lexicographically least upper-triangle encoding over all
/// vertex orders, with pairs listed column by column: `(0,1), (0,2), (1,2),
/// (0,3), ...`, earliest pair most significant, bit set iff the earlier
/// vertex beats the later one. `perm[k]` is the original vertex placed at
/// canonical position `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub n: usize,
    pub code: u32,
    pub perm: Vec<usize>,
}

impl CanonicalForm {
    /// The canonical representative tournament.
    pub fn tournament(&self) -> Tournament {
        // column-major, most significant bit first
        let top = self.n * (self.n - 1) / 2;
        Tournament::from_fn(self.n, |a, b| self.code >> (top - 1 - (b * (b - 1) / 2 + a)) & 1 == 1)
    }

    /// `inverse()[v]` is the canonical position of original vertex `v`.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.n];
        for (k, &v) in self.perm.iter().enumerate() {
            inv[v] = k;
        }
        inv
    }
}

/// Computes the canonical form by breadth-first search over vertex orders,
/// keeping at each depth only the partial orders whose code prefix is minimal.
pub fn canonical_form(t: &Tournament) -> Result<CanonicalForm, TournamentError> {
    let n = t.order();
    if n > MAX_ISO_ORDER {
        return Err(TournamentError::IsoTooLarge(n));
    }
    // out-neighbour masks for fast column computation
    let mut out = [0u8; MAX_ISO_ORDER];
    for (u, row) in out.iter_mut().enumerate().take(n) {
        for v in 0..n {
            if t.arc(u, v) {
                *row |= 1 << v;
            }
        }
    }
    #[derive(Clone, Copy)]
    struct Partial {
        perm: [u8; MAX_ISO_ORDER],
        used: u8,
    }
    let mut frontier = vec![Partial { perm: [0; MAX_ISO_ORDER], used: 0 }];
    let mut code: u32 = 0;
    let mut next = Vec::new();
    for depth in 0..n {
        let mut best = u32::MAX;
        next.clear();
        for p in &frontier {
            for w in 0..n {
                if p.used >> w & 1 == 1 {
                    continue;
                }
                let mut col = 0u32;
                for a in 0..depth {
                    col = col << 1 | u32::from(out[p.perm[a] as usize] >> w & 1);
                }
                if col < best {
                    best = col;
                    next.clear();
                }
                if col == best {
                    let mut q = *p;
                    q.perm[depth] = w as u8;
                    q.used |= 1 << w;
                    next.push(q);
                }
            }
        }
        code = (code << depth) | best;
        std::mem::swap(&mut frontier, &mut next);
    }
    let perm = frontier[0].perm[..n].iter().map(|&v| v as usize).collect();
    Ok(CanonicalForm { n, code, perm })
}
