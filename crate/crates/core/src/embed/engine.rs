//! Recursive construction over vertex subsets of one tournament.
//!
//! A `flip` flag selects the complemented view: under it every arc is read
//! reversed. Sub-instances are identified by a vertex slice in original
//! labels, so results never need relabelling.

use super::variant::{Degrees, VariantTag};
use super::{Embedder, Step};
use crate::oracle::{oracle_embed, OriginConstraint, BASE_LIMIT};
use crate::pattern::{Dir, PathPattern};
use crate::tournament::paths::{directed_path_ending_at, hamiltonian_path, strong_components};
use crate::tournament::{classify_small, Tournament};

type Seq = Vec<usize>;

pub(crate) struct Engine<'a> {
    t: &'a Tournament,
    cfg: &'a Embedder,
    trace: Vec<Step>,
}

fn without(set: &[usize], drop: &[usize]) -> Vec<usize> {
    set.iter().copied().filter(|w| !drop.contains(w)).collect()
}

impl<'a> Engine<'a> {
    pub fn new(t: &'a Tournament, cfg: &'a Embedder) -> Self {
        Engine { t, cfg, trace: Vec::new() }
    }

    pub fn into_trace(self) -> Vec<Step> {
        self.trace
    }

    fn push(&mut self, s: Step) {
        if self.trace.last() != Some(&s) {
            self.trace.push(s);
        }
    }

    #[inline]
    fn arc(&self, flip: bool, u: usize, v: usize) -> bool {
        self.t.arc(u, v) != flip
    }

    #[inline]
    fn fits(&self, flip: bool, d: Dir, a: usize, b: usize) -> bool {
        match d {
            Dir::F => self.arc(flip, a, b),
            Dir::B => self.arc(flip, b, a),
        }
    }

    fn in_degrees(&self, flip: bool, set: &[usize]) -> Vec<usize> {
        set.iter().map(|&v| set.iter().filter(|&&w| w != v && self.arc(flip, w, v)).count()).collect()
    }

    fn is_t357(&self, flip: bool, set: &[usize]) -> bool {
        if !matches!(set.len(), 3 | 5 | 7) {
            return false;
        }
        let sub = Tournament::from_fn(set.len(), |a, b| self.arc(flip, set[a], set[b]));
        classify_small(&sub).is_some_and(|c| c.kind.is_grunbaum())
    }

    /// Copy of `pat` on exactly the vertices of `set`, or `None` if there is
    /// none.
    pub fn solve(&mut self, flip: bool, set: &[usize], pat: &PathPattern) -> Option<Seq> {
        let indeg = self.in_degrees(flip, set);
        self.solve_with(flip, set, indeg, pat)
    }

    fn solve_with(&mut self, flip: bool, set: &[usize], indeg: Vec<usize>, pat: &PathPattern) -> Option<Seq> {
        debug_assert_eq!(set.len(), pat.order());
        let n = set.len();
        if n <= 2 {
            if self.trace.is_empty() {
                self.push(Step::Trivial);
            }
            return match n {
                0 => Some(Vec::new()),
                1 => Some(vec![set[0]]),
                _ if self.fits(flip, pat.dir(0), set[0], set[1]) => Some(vec![set[0], set[1]]),
                _ => Some(vec![set[1], set[0]]),
            };
        }
        if pat.is_directed() {
            self.push(Step::Redei);
            let mut path = hamiltonian_path(&|u, v| self.arc(flip, u, v), set);
            if pat.dir(0) == Dir::B {
                path.reverse();
            }
            return Some(path);
        }
        if n <= self.cfg.n0 {
            return self.exact(flip, set, pat, &OriginConstraint::none());
        }
        let found = if let Some(i) = indeg.iter().position(|&d| d == 0) {
            let rest_deg = indeg.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &d)| d - 1).collect();
            self.simple_lemma_with(flip, set, i, rest_deg, pat, None)
        } else if let Some(i) = indeg.iter().position(|&d| d == n - 1) {
            let rest_deg = indeg.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &d)| n - 2 - d).collect();
            self.simple_lemma_with(!flip, set, i, rest_deg, &pat.complement(), None)
        } else {
            self.induction(flip, set, &indeg, pat)
        };
        found.or_else(|| self.exact(flip, set, pat, &OriginConstraint::none()))
    }

    /// Exact search on the subtournament `set` with origin constraint `c`
    /// (given in original labels).
    fn exact(&mut self, flip: bool, set: &[usize], pat: &PathPattern, c: &OriginConstraint) -> Option<Seq> {
        let n = set.len();
        if n == 0 {
            return Some(Vec::new());
        }
        let local = |v: usize| set.iter().position(|&w| w == v);
        let required_origin = match c.required_origin {
            Some(r) => Some(local(r)?),
            None => None,
        };
        let lc = OriginConstraint {
            required_origin,
            forbidden_origins: c.forbidden_origins.iter().filter_map(|&v| local(v)).collect(),
        };
        if lc.forbidden_origins.len() == n {
            return None;
        }
        let sub = Tournament::from_fn(n, |a, b| self.arc(flip, set[a], set[b]));
        let found = if n <= BASE_LIMIT {
            self.push(Step::BaseOracle);
            self.cfg.base.solve(&sub, pat, &lc)
        } else {
            self.push(Step::OracleFallback(n));
            oracle_embed(&sub, pat, &lc)
        };
        let found = found.expect("sizes and constraint are consistent by construction");
        found.map(|s| s.into_iter().map(|i| set[i]).collect())
    }

    /// Exact search for a copy whose last vertex lies in `ends`.
    fn exact_ending(&mut self, flip: bool, set: &[usize], pat: &PathPattern, ends: &[usize]) -> Option<Seq> {
        let c = OriginConstraint::forbid(without(set, ends));
        let mut seq = self.exact(flip, set, &pat.reverse(), &c)?;
        seq.reverse();
        Some(seq)
    }

    /// Source-insertion lemma: `v` is a source of `set ∪ {v}` under `flip`
    /// and `pat` is not directed. With `origin`, the copy must start there.
    pub fn simple_lemma(
        &mut self,
        flip: bool,
        rest: &[usize],
        v: usize,
        pat: &PathPattern,
        origin: Option<usize>,
    ) -> Option<Seq> {
        let mut set = rest.to_vec();
        set.push(v);
        let deg = self.in_degrees(flip, rest);
        self.simple_lemma_with(flip, &set, rest.len(), deg, pat, origin)
    }

    fn simple_lemma_with(
        &mut self,
        flip: bool,
        set: &[usize],
        vi: usize,
        rest_deg: Vec<usize>,
        pat: &PathPattern,
        origin: Option<usize>,
    ) -> Option<Seq> {
        self.push(Step::SimpleLemma);
        let n = pat.order();
        let v = set[vi];
        let rest: Vec<usize> = set.iter().copied().filter(|&w| w != v).collect();
        let j = (1..n).find(|&q| pat.is_source(q))?;
        let candidates: Vec<PathPattern> = if j == n - 1 {
            vec![pat.slice(0, n - 2)]
        } else {
            let fwd = pat.delete_bridge(j, Dir::F).ok()?;
            let back = pat.delete_bridge(j, Dir::B).ok()?;
            if fwd.is_antidirected() && self.is_t357(flip, &rest) {
                vec![back, fwd]
            } else {
                vec![fwd, back]
            }
        };
        for sub in candidates {
            let found = match origin {
                None => self.solve_with(flip, &rest, rest_deg.clone(), &sub),
                Some(o) => self.exact(flip, &rest, &sub, &OriginConstraint::origin(o)),
            };
            if let Some(mut seq) = found {
                seq.insert(j, v);
                return Some(seq);
            }
        }
        None
    }

    fn induction(&mut self, flip: bool, set: &[usize], indeg: &[usize], pat: &PathPattern) -> Option<Seq> {
        let n = set.len();
        let outdeg: Vec<usize> = indeg.iter().map(|&d| n - 1 - d).collect();
        let deg = Degrees::from_in(indeg);
        let mut tried: Vec<(VariantTag, usize)> = Vec::new();
        if let Some((tag, q)) = deg.first_qualifying(pat) {
            self.push(Step::Variant(tag));
            let d = if tag.complemented() { &outdeg } else { indeg };
            let min = *d.iter().min().expect("nonempty");
            let i = d.iter().position(|&x| x == min).expect("min exists");
            let f = flip != tag.complemented();
            if let Some(seq) = self.attempt(f, set, &q, set[i]) {
                return Some(tag.undo(seq));
            }
            tried.push((tag, i));
        } else {
            self.push(Step::Thm3Fallback);
        }
        let mut budget = self.cfg.max_pivots.saturating_sub(tried.len());
        for tag in VariantTag::ALL {
            let q = tag.pattern(pat);
            let d = if tag.complemented() { &outdeg } else { indeg };
            let f = flip != tag.complemented();
            let mut cands: Vec<usize> = (0..n)
                .filter(|&i| d[i] >= 1 && d[i] < n - 1 && q.dir(d[i] - 1) == Dir::F && !tried.contains(&(tag, i)))
                .collect();
            cands.sort_by_key(|&i| d[i]);
            for i in cands {
                if budget == 0 {
                    return None;
                }
                budget -= 1;
                self.push(Step::PivotRetry);
                if let Some(seq) = self.attempt(f, set, &q, set[i]) {
                    return Some(tag.undo(seq));
                }
            }
        }
        None
    }

    /// One pivot step; on failure the trace is rolled back except for exact
    /// searches above the base limit, which stay visible.
    fn attempt(&mut self, flip: bool, set: &[usize], pat: &PathPattern, v: usize) -> Option<Seq> {
        let mark = self.trace.len();
        let found = self.pivot_step(flip, set, pat, v);
        if found.is_none() {
            let kept: Vec<Step> =
                self.trace[mark..].iter().filter(|s| matches!(s, Step::OracleFallback(_))).cloned().collect();
            self.trace.truncate(mark);
            self.trace.extend(kept);
        }
        debug_assert!(found.as_ref().is_none_or(|s| self.valid(flip, set.len(), pat, s)));
        found
    }

    fn valid(&self, flip: bool, n: usize, pat: &PathPattern, seq: &[usize]) -> bool {
        seq.len() == n && pat.dirs().iter().zip(seq.windows(2)).all(|(&d, w)| self.fits(flip, d, w[0], w[1]))
    }

    /// `v` goes to position `k = d⁻(v)`, its in-neighbours fill the prefix
    /// and its out-neighbours the suffix. Requires `pat.dir(k - 1) == F`.
    fn pivot_step(&mut self, flip: bool, set: &[usize], pat: &PathPattern, v: usize) -> Option<Seq> {
        let (t1, t2): (Vec<usize>, Vec<usize>) =
            set.iter().copied().filter(|&w| w != v).partition(|&w| self.arc(flip, w, v));
        let k = t1.len();
        debug_assert!(k >= 1 && pat.dir(k - 1) == Dir::F);
        match self.solve(flip, &t1, &pat.slice(0, k - 1)) {
            Some(prefix) => self.case2(flip, &t1, &t2, v, prefix, pat),
            None => self.case1(flip, &t1, &t2, v, pat),
        }
    }

    /// The prefix is embeddable.
    fn case2(&mut self, flip: bool, t1: &[usize], t2: &[usize], v: usize, prefix: Seq, pat: &PathPattern) -> Option<Seq> {
        let n = pat.order();
        let k = t1.len();
        if k == n - 1 {
            self.push(Step::Case2("tail"));
            let mut seq = prefix;
            seq.push(v);
            return Some(seq);
        }
        if pat.dir(k) == Dir::B {
            return self.case2_single(flip, t1, t2, v, prefix, pat);
        }
        self.push(Step::Case2("b1ge2"));
        if let Some(suffix) = self.solve(flip, t2, &pat.slice(k + 1, n - 1)) {
            let mut seq = prefix;
            seq.push(v);
            seq.extend(suffix);
            return Some(seq);
        }
        // the suffix host is exceptional: let v move into the tail
        self.push(Step::Case2("b1ge2:t2_exceptional"));
        let mut t2v = t2.to_vec();
        t2v.push(v);
        let tail = pat.slice(k, n - 1);
        let pe = *prefix.last().expect("k >= 1");
        for &x in t2 {
            if self.arc(flip, pe, x) {
                if let Some(rest) = self.exact(flip, &t2v, &tail, &OriginConstraint::origin(x)) {
                    let mut seq = prefix;
                    seq.extend(rest);
                    return Some(seq);
                }
            }
        }
        if k > BASE_LIMIT {
            return None;
        }
        let head = pat.slice(0, k - 1);
        for &x in t2 {
            let ends: Vec<usize> = t1.iter().copied().filter(|&y| self.arc(flip, y, x)).collect();
            if ends.is_empty() {
                continue;
            }
            let Some(rest) = self.exact(flip, &t2v, &tail, &OriginConstraint::origin(x)) else { continue };
            if let Some(mut seq) = self.exact_ending(flip, t1, &head, &ends) {
                seq.extend(rest);
                return Some(seq);
            }
        }
        None
    }

    /// The prefix is embeddable and the block containing `v`'s forward arc
    /// has length one: the backward block after `v` is routed through the
    /// strong components of the out-neighbourhood.
    fn case2_single(
        &mut self,
        flip: bool,
        t1: &[usize],
        t2: &[usize],
        v: usize,
        mut prefix: Seq,
        pat: &PathPattern,
    ) -> Option<Seq> {
        let n = pat.order();
        let k = t1.len();
        let b2 = pat.run_from(k);
        let has_exit = |e: &Self, y: usize| t2.iter().any(|&w| e.arc(flip, y, w));
        if !has_exit(self, *prefix.last().expect("k >= 1")) {
            if k > BASE_LIMIT {
                return None;
            }
            self.push(Step::Case2("b1eq1:reprefix"));
            let ends: Vec<usize> = t1.iter().copied().filter(|&y| has_exit(self, y)).collect();
            if ends.is_empty() {
                return None;
            }
            prefix = self.exact_ending(flip, t1, &pat.slice(0, k - 1), &ends)?;
        }
        let pe = *prefix.last().expect("k >= 1");
        let t = self.t;
        let arcf = move |u: usize, w: usize| t.arc(u, w) != flip;
        let comps = strong_components(&arcf, t2);
        let l = comps.iter().rposition(|c| c.iter().any(|&w| arcf(pe, w)))?;
        let covered: Vec<usize> = comps[..=l].concat();
        let s = covered.len();
        let top = comps[l].iter().copied().filter(|&w| arcf(pe, w)).min()?;
        let chain = directed_path_ending_at(&arcf, t2, top);
        debug_assert_eq!(chain.len(), s);
        let suffix_pat = |from: usize| pat.slice(from.min(n - 1), n - 1);
        let after = k + b2 + 1;

        if s > b2 {
            self.push(Step::Case2("b1eq1:s_gt_b2"));
            let u = &chain[s - b2 - 1..];
            let rest = without(t2, &u[1..]);
            let mut seq = prefix;
            seq.extend(u[1..].iter().rev());
            if rest.is_empty() {
                seq.push(v);
                return Some(seq);
            }
            let mut with_v = seq.clone();
            with_v.push(v);
            if let Some(suffix) = self.solve(flip, &rest, &suffix_pat(after)) {
                with_v.extend(suffix);
                return Some(with_v);
            }
            self.push(Step::Case2("b1eq1:s_gt_b2:residual"));
            let mut pool = rest;
            pool.push(v);
            let tail = self.exact(flip, &pool, &suffix_pat(k + b2), &OriginConstraint::origin(u[0]))?;
            seq.extend(tail);
            return Some(seq);
        }

        if s == b2 {
            self.push(Step::Case2("b1eq1:s_eq_b2"));
            let rest = without(t2, &covered);
            let mut seq = prefix.clone();
            seq.extend(chain.iter().rev());
            seq.push(v);
            if rest.is_empty() {
                return Some(seq);
            }
            if let Some(suffix) = self.solve(flip, &rest, &suffix_pat(after)) {
                seq.extend(suffix);
                return Some(seq);
            }
            if k == 1 || pat.dir(k - 2) == Dir::F {
                self.push(Step::Case2("b1eq1:s_eq_b2:shift"));
                for &a in &rest {
                    let mut pool = without(&rest, &[a]);
                    pool.push(pe);
                    let c = OriginConstraint::forbid([pe]);
                    if let Some(tail) = self.exact(flip, &pool, &suffix_pat(after), &c) {
                        let mut seq = prefix[..k - 1].to_vec();
                        seq.extend([v, a]);
                        seq.extend(chain.iter().rev());
                        seq.extend(tail);
                        return Some(seq);
                    }
                }
            }
            return None;
        }

        // s < b2: v moves one slot left, the block is finished by a
        // backward path taken from the components after I_l
        if s < 2 || !(k == 1 || pat.dir(k - 2) == Dir::F) {
            return None;
        }
        self.push(Step::Case2("b1eq1:s_lt_b2"));
        let outside = without(t2, &covered);
        let q_len = b2 - s;
        let ham = hamiltonian_path(&arcf, &outside);
        let last_start = ham.len() - q_len;
        let mut starts: Vec<usize> = (0..=last_start).rev().collect();
        starts.truncate(8);
        for start in starts {
            let window = &ham[start..start + q_len];
            let remaining = without(&outside, window);
            let suffix = if remaining.is_empty() {
                Vec::new()
            } else {
                match self.solve(flip, &remaining, &suffix_pat(after)) {
                    Some(x) => x,
                    None => continue,
                }
            };
            let mut seq = prefix[..k - 1].to_vec();
            seq.extend([v, top, pe]);
            seq.extend(window.iter().rev());
            seq.extend(chain[..s - 1].iter().rev());
            seq.extend(suffix);
            return Some(seq);
        }
        None
    }

    /// The prefix host is exceptional.
    fn case1(&mut self, flip: bool, t1: &[usize], t2: &[usize], v: usize, pat: &PathPattern) -> Option<Seq> {
        let n = pat.order();
        let k = t1.len();
        if k < n - 1 {
            if let Some(suffix) = self.solve(flip, t2, &pat.slice(k + 1, n - 1)) {
                self.push(Step::Case1("shift"));
                let mut t1v = t1.to_vec();
                t1v.push(v);
                let s0 = suffix[0];
                let d = pat.dir(k);
                let ends: Vec<usize> = t1v.iter().copied().filter(|&x| self.fits(flip, d, x, s0)).collect();
                if !ends.is_empty() {
                    if let Some(mut seq) = self.exact_ending(flip, &t1v, &pat.slice(0, k), &ends) {
                        seq.extend(suffix);
                        return Some(seq);
                    }
                }
            }
        }
        if k < n - 1 && pat.dir(k) == Dir::F && (k + 1 == n - 1 || pat.dir(k + 1) == Dir::F) {
            self.push(Step::Case1("borrow"));
            for &a in t2 {
                let rest = without(t2, &[a]);
                let suffix = if rest.is_empty() {
                    Vec::new()
                } else {
                    match self.solve(flip, &rest, &pat.slice(k + 2, n - 1)) {
                        Some(x) => x,
                        None => continue,
                    }
                };
                let mut host = t1.to_vec();
                host.push(a);
                if let Some(mut seq) = self.exact_ending(flip, &host, &pat.slice(0, k), t1) {
                    seq.push(v);
                    seq.extend(suffix);
                    return Some(seq);
                }
            }
        }
        None
    }
}
