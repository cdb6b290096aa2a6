//! Directed paths, circuits and strong components.
//!
//! Everything here works on an arbitrary vertex subset of some tournament,
//! given as a slice plus an arc predicate, so the embedder can run these on
//! subtournaments and complemented views without materializing them.

use serde::{Deserialize, Serialize};

/// Strong components `I1, ..., It` in order; every arc between `Ii` and
/// `Ij` with `i < j` points from `Ii` to `Ij`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongDecomposition {
    pub components: Vec<Vec<usize>>,
}

impl StrongDecomposition {
    pub fn component_of(&self, x: usize) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&x))
    }
}

/// Hamiltonian directed path of the subtournament on `verts`.
///
/// Vertices are inserted in slice order; each one goes to the front, the
/// back, or between an in-neighbour and an out-neighbour found by binary
/// search.
pub fn hamiltonian_path<F>(arc: &F, verts: &[usize]) -> Vec<usize>
where
    F: Fn(usize, usize) -> bool,
{
    let mut path: Vec<usize> = Vec::with_capacity(verts.len());
    for &w in verts {
        if path.is_empty() || arc(w, path[0]) {
            path.insert(0, w);
            continue;
        }
        let last = path.len() - 1;
        if arc(path[last], w) {
            path.push(w);
            continue;
        }
        // path[lo] -> w and w -> path[hi]
        let (mut lo, mut hi) = (0, last);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if arc(path[mid], w) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        path.insert(hi, w);
    }
    path
}

/// Strong components of the subtournament on `verts`, in order.
///
/// Components are intervals of any Hamiltonian directed path. A cut after
/// position `k` separates components iff no vertex after `k` has an arc
/// back to a vertex at or before `k`.
pub fn strong_components<F>(arc: &F, verts: &[usize]) -> Vec<Vec<usize>>
where
    F: Fn(usize, usize) -> bool,
{
    let path = hamiltonian_path(arc, verts);
    let len = path.len();
    if len == 0 {
        return Vec::new();
    }
    // suffix_low[p] = smallest position reachable by a single arc from positions >= p
    let mut suffix_low = vec![usize::MAX; len + 1];
    for p in (0..len).rev() {
        let bound = suffix_low[p + 1].min(p + 1);
        let mut low = bound;
        for (q, &w) in path.iter().enumerate().take(bound) {
            if arc(path[p], w) {
                low = q;
                break;
            }
        }
        suffix_low[p] = low.min(suffix_low[p + 1]);
    }
    let mut comps = Vec::new();
    let mut start = 0;
    for k in 0..len {
        let cut = k + 1 == len || suffix_low[k + 1] > k;
        if cut {
            comps.push(path[start..=k].to_vec());
            start = k + 1;
        }
    }
    comps
}

/// Hamiltonian circuit of a strong subtournament, or `None` when the
/// subtournament is not strong or has fewer than three vertices.
///
/// Starts from the longest circuit closing back on the first vertex of a
/// Hamiltonian path, then absorbs the remaining path vertices one at a time,
/// parking vertices dominated by the circuit until a later vertex offers an
/// arc back into it.
pub fn hamiltonian_cycle<F>(arc: &F, verts: &[usize]) -> Option<Vec<usize>>
where
    F: Fn(usize, usize) -> bool,
{
    if verts.len() < 3 {
        return None;
    }
    let path = hamiltonian_path(arc, verts);
    let first = path[0];
    let close = (2..path.len()).rev().find(|&j| arc(path[j], first))?;
    let mut cycle: Vec<usize> = path[..=close].to_vec();
    let mut pending: Vec<usize> = Vec::new();
    for &w in &path[close + 1..] {
        let len = cycle.len();
        if pending.is_empty() {
            // both an in- and an out-neighbour on the circuit: slot between them
            if let Some(k) = (0..len).find(|&k| arc(cycle[k], w) && arc(w, cycle[(k + 1) % len])) {
                cycle.insert(k + 1, w);
            } else {
                pending.push(w);
            }
        } else if let Some(k) = (0..len).find(|&k| arc(w, cycle[k])) {
            // every circuit vertex dominates pending[0]; splice before cycle[k]
            pending.push(w);
            let at = if k == 0 { len } else { k };
            cycle.splice(at..at, pending.drain(..));
        } else {
            pending.push(w);
        }
    }
    if pending.is_empty() {
        Some(cycle)
    } else {
        None
    }
}

/// Directed path ending at `x` covering exactly the strong components up to
/// and including the one containing `x`.
pub fn directed_path_ending_at<F>(arc: &F, verts: &[usize], x: usize) -> Vec<usize>
where
    F: Fn(usize, usize) -> bool,
{
    let comps = strong_components(arc, verts);
    let ci = comps.iter().position(|c| c.contains(&x)).expect("x must be one of verts");
    let earlier: Vec<usize> = comps[..ci].iter().flatten().copied().collect();
    let mut out = hamiltonian_path(arc, &earlier);
    let comp = &comps[ci];
    if comp.len() == 1 {
        out.push(x);
    } else {
        let cyc = hamiltonian_cycle(arc, comp).expect("strong component has a circuit");
        let at = cyc.iter().position(|&c| c == x).expect("x on circuit");
        let len = cyc.len();
        out.extend((1..=len).map(|k| cyc[(at + k) % len]));
    }
    out
}
