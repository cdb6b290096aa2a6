//! Constructive embedding of an oriented Hamiltonian path into a tournament.
//!
//! The engine works by induction on the order. Directed patterns use the
//! insertion-built Hamiltonian path; a source (or sink) vertex is handled by
//! the source-insertion lemma; otherwise one of four witness-equivalent
//! variants `(T, P)`, `(T̄, P̄)`, `(T, P̃)`, `(T̄, P̃̄)` is normalized so the arc
//! leaving position `δ⁻` points forward, a minimum in-degree vertex `v` is
//! placed at that position, its in-neighbourhood hosts the prefix and its
//! out-neighbourhood the suffix, and the two halves are glued according to
//! the cases below. Sub-instances of order at most `n0` go to the memoized
//! exact base solver.

mod engine;
mod variant;

use serde::{Deserialize, Serialize};

pub use variant::{choose_variant, VariantChoice, VariantTag};

use crate::error::EmbedError;
use crate::oracle::{BaseSolver, OriginConstraint, Prepared, BASE_LIMIT};
use crate::pattern::{Dir, PathPattern};
use crate::tournament::{classify_small, ExceptionClass, Tournament};
use engine::Engine;

/// A copy of `pattern`: `seq[k]` is the tournament vertex at position `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub pattern: PathPattern,
    pub seq: Vec<usize>,
}

impl Embedding {
    pub fn origin(&self) -> usize {
        self.seq[0]
    }

    pub fn end(&self) -> usize {
        *self.seq.last().expect("nonempty")
    }
}

/// Certificate that the instance is one of the three Grünbaum exceptions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionReport {
    pub class: ExceptionClass,
    pub antidirected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Witness(Embedding),
    Exception(ExceptionReport),
}

/// One step of the derivation that produced an outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Trivial,
    Redei,
    Variant(VariantTag),
    SimpleLemma,
    Case1(&'static str),
    Case2(&'static str),
    BaseOracle,
    Thm3Fallback,
    PivotRetry,
    /// Exact search on a sub-instance of the given order above the base limit.
    OracleFallback(usize),
}

impl std::fmt::Display for Step {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Step::Trivial => f.write_str("trivial"),
            Step::Redei => f.write_str("redei"),
            Step::Variant(v) => write!(f, "variant:{v}"),
            Step::SimpleLemma => f.write_str("simple_lemma"),
            Step::Case1(s) => write!(f, "case1:{s}"),
            Step::Case2(s) => write!(f, "case2:{s}"),
            Step::BaseOracle => f.write_str("base_oracle"),
            Step::Thm3Fallback => f.write_str("thm3_fallback"),
            Step::PivotRetry => f.write_str("pivot_retry"),
            Step::OracleFallback(n) => write!(f, "oracle_fallback:{n}"),
        }
    }
}

/// Ordered trace of the steps that fired.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MethodTag {
    pub steps: Vec<Step>,
}

impl MethodTag {
    pub fn labels(&self) -> Vec<String> {
        self.steps.iter().map(Step::to_string).collect()
    }

    pub fn contains(&self, pred: impl Fn(&Step) -> bool) -> bool {
        self.steps.iter().any(pred)
    }

    pub fn thm3_fallback(&self) -> bool {
        self.contains(|s| *s == Step::Thm3Fallback)
    }

    /// Exact searches run on sub-instances larger than `n0`.
    pub fn oracle_fallbacks_above(&self, n0: usize) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::OracleFallback(k) if *k > n0)).count()
    }
}

impl std::fmt::Display for MethodTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.labels().join(" > "))
    }
}

impl Serialize for MethodTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbedOutcome {
    pub result: Outcome,
    pub method: MethodTag,
}

impl EmbedOutcome {
    pub fn witness(&self) -> Option<&Embedding> {
        match &self.result {
            Outcome::Witness(e) => Some(e),
            Outcome::Exception(_) => None,
        }
    }

    pub fn exception(&self) -> Option<&ExceptionReport> {
        match &self.result {
            Outcome::Witness(_) => None,
            Outcome::Exception(r) => Some(r),
        }
    }
}

/// `true` iff `seq` lists every vertex of `t` once and each consecutive pair
/// is oriented as the pattern prescribes.
pub fn validate(t: &Tournament, p: &PathPattern, seq: &[usize]) -> bool {
    let n = t.order();
    if p.order() != n || seq.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in seq {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    p.dirs().iter().zip(seq.windows(2)).all(|(d, w)| match d {
        Dir::F => t.arc(w[0], w[1]),
        Dir::B => t.arc(w[1], w[0]),
    })
}

/// Default base threshold: sub-instances with at most this many vertices
/// are solved exactly.
pub const DEFAULT_N0: usize = 8;

/// Default cap on pivot attempts per inductive step before exact search.
pub const DEFAULT_MAX_PIVOTS: usize = 32;

/// The embedding engine with its base-solver cache.
pub struct Embedder {
    n0: usize,
    max_pivots: usize,
    base: BaseSolver,
}

impl Default for Embedder {
    fn default() -> Self {
        Embedder::new(DEFAULT_N0)
    }
}

impl Embedder {
    /// `n0` is clamped to `2..=8`.
    pub fn new(n0: usize) -> Self {
        Embedder { n0: n0.clamp(2, BASE_LIMIT), max_pivots: DEFAULT_MAX_PIVOTS, base: BaseSolver::default() }
    }

    pub fn with_max_pivots(mut self, max_pivots: usize) -> Self {
        self.max_pivots = max_pivots.max(1);
        self
    }

    pub fn n0(&self) -> usize {
        self.n0
    }

    pub fn base(&self) -> &BaseSolver {
        &self.base
    }

    /// Embeds `p` into `t` or reports that `(t, p)` is a Grünbaum exception.
    pub fn embed(&self, t: &Tournament, p: &PathPattern) -> Result<EmbedOutcome, EmbedError> {
        if t.order() != p.order() {
            return Err(EmbedError::SizeMismatch { tournament: t.order(), pattern: p.order() });
        }
        let mut engine = Engine::new(t, self);
        let verts: Vec<usize> = (0..t.order()).collect();
        let found = engine.solve(false, &verts, p);
        self.finish(t, p, found, engine.into_trace(), None)
    }

    /// Embeds every pattern into one small tournament, canonicalizing it once.
    /// Falls back to [`Embedder::embed`] above the base threshold.
    pub fn embed_all(&self, t: &Tournament, patterns: &[PathPattern]) -> Vec<Result<EmbedOutcome, EmbedError>> {
        let n = t.order();
        if n <= 2 || n > self.n0 {
            return patterns.iter().map(|p| self.embed(t, p)).collect();
        }
        let prep = match Prepared::new(t) {
            Ok(p) => p,
            Err(e) => return patterns.iter().map(|_| Err(e.clone())).collect(),
        };
        let mut class: Option<Option<ExceptionClass>> = None;
        patterns
            .iter()
            .map(|p| {
                if p.order() != n {
                    return Err(EmbedError::SizeMismatch { tournament: n, pattern: p.order() });
                }
                if p.is_directed() {
                    return self.embed(t, p);
                }
                let found = self.base.solve_prepared(&prep, p, &OriginConstraint::none())?;
                let cls = if found.is_none() { class.get_or_insert_with(|| classify_small(t)).clone() } else { None };
                self.finish(t, p, found, vec![Step::BaseOracle], Some(cls))
            })
            .collect()
    }

    fn finish(
        &self,
        t: &Tournament,
        p: &PathPattern,
        found: Option<Vec<usize>>,
        steps: Vec<Step>,
        class: Option<Option<ExceptionClass>>,
    ) -> Result<EmbedOutcome, EmbedError> {
        let method = MethodTag { steps };
        match found {
            Some(seq) => {
                if !validate(t, p, &seq) {
                    panic!("embedder produced an invalid copy of {p} in {}: {seq:?} via {method}", t.to_code());
                }
                Ok(EmbedOutcome { result: Outcome::Witness(Embedding { pattern: p.clone(), seq }), method })
            }
            None => {
                let class = class.unwrap_or_else(|| classify_small(t));
                match class {
                    Some(class) if class.kind.is_grunbaum() && p.is_antidirected() => Ok(EmbedOutcome {
                        result: Outcome::Exception(ExceptionReport { class, antidirected: true }),
                        method,
                    }),
                    _ => Err(EmbedError::Unexplained { code: t.to_code(), pattern: p.to_string() }),
                }
            }
        }
    }

    /// Copy of a non-directed `p` in `t` whose origin is not the source (or
    /// sink) `v`. With `origin`, the copy must start there instead; this is
    /// always possible when `t - v` is one of the three exceptions.
    pub fn simple_lemma_embed(
        &self,
        t: &Tournament,
        v: usize,
        p: &PathPattern,
        origin: Option<usize>,
    ) -> Result<Embedding, EmbedError> {
        let n = t.order();
        if p.order() != n {
            return Err(EmbedError::SizeMismatch { tournament: n, pattern: p.order() });
        }
        if v >= n {
            return Err(crate::TournamentError::VertexOutOfRange { vertex: v, n }.into());
        }
        if p.is_directed() {
            return Err(EmbedError::DirectedPattern);
        }
        let (flip, pat) = if t.in_degree(v) == 0 {
            (false, p.clone())
        } else if t.out_degree(v) == 0 {
            (true, p.complement())
        } else {
            return Err(EmbedError::NotExtreme(v));
        };
        let rest: Vec<usize> = (0..n).filter(|&w| w != v).collect();
        // P+(1,2) over a cyclic triangle (P-(1,2) for a sink)
        if n == 4 && pat.dirs() == [Dir::F, Dir::B, Dir::B] {
            let (sub, _) = t.induced(&rest)?;
            if sub.min_out_degree() == 1 && sub.max_out_degree() == 1 {
                return Err(EmbedError::ExceptionalPair { pattern: p.to_string() });
            }
        }
        if let Some(o) = origin {
            if o == v || o >= n {
                return Err(EmbedError::OriginUnavailable(o));
            }
        }
        let mut engine = Engine::new(t, self);
        let seq = engine
            .simple_lemma(flip, &rest, v, &pat, origin)
            .ok_or(EmbedError::OriginUnavailable(origin.unwrap_or(v)))?;
        assert!(validate(t, p, &seq), "source insertion produced an invalid copy: {seq:?}");
        Ok(Embedding { pattern: p.clone(), seq })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PathPattern {
        s.parse().unwrap()
    }

    #[test]
    fn validate_examples() {
        let c = Tournament::cyclic_triangle();
        assert!(validate(&c, &p("FF"), &[0, 1, 2]));
        assert!(!validate(&c, &p("FF"), &[0, 2, 1]));
        assert!(!validate(&c, &p("FF"), &[0, 1, 1]));
        assert!(!validate(&c, &p("FF"), &[0, 1]));
        assert!(!validate(&c, &p("FF"), &[0, 1, 7]));
    }

    #[test]
    fn embed_examples() {
        let e = Embedder::default();
        let out = e.embed(&Tournament::cyclic_triangle(), &p("FB")).unwrap();
        assert_eq!(out.exception().unwrap().class.kind, crate::ExceptionKind::T3);
        let t5 = Tournament::rotational(5);
        let out = e.embed(&t5, &p("FFFF")).unwrap();
        assert!(validate(&t5, &p("FFFF"), &out.witness().unwrap().seq));
        assert_eq!(out.method.labels(), vec!["redei"]);
        let out = e.embed(&Tournament::t4_plus(), &p("FBB")).unwrap();
        assert_eq!(out.witness().unwrap().origin(), 0);
        assert!(matches!(
            e.embed(&Tournament::t4_plus(), &p("FB")),
            Err(EmbedError::SizeMismatch { tournament: 4, pattern: 3 })
        ));
    }

    #[test]
    fn flipped_rotational_five() {
        // rotational 5-tournament with the arc 0 -> 1 reversed
        let t = Tournament::from_fn(5, |u, v| if (u, v) == (0, 1) { false } else { v - u <= 2 });
        let pat = p("FBFB");
        let out = Embedder::default().embed(&t, &pat).unwrap();
        assert!(validate(&t, &pat, &out.witness().unwrap().seq));
        assert!(crate::oracle::oracle_embed(&t, &pat, &OriginConstraint::none()).unwrap().is_some());
    }

    #[test]
    fn simple_lemma_examples() {
        let e = Embedder::default();
        let t4 = Tournament::t4_plus();
        let w = e.simple_lemma_embed(&t4, 0, &p("BFF"), None).unwrap();
        assert_eq!(w.seq[1], 0);
        assert_ne!(w.origin(), 0);
        assert!(matches!(
            e.simple_lemma_embed(&t4, 0, &p("FBB"), None),
            Err(EmbedError::ExceptionalPair { .. })
        ));
        let tt = Tournament::transitive(4);
        let w = e.simple_lemma_embed(&tt, 0, &p("FBF"), None).unwrap();
        assert_ne!(w.origin(), 0);
        assert_eq!(e.simple_lemma_embed(&tt, 0, &p("FFF"), None), Err(EmbedError::DirectedPattern));
        assert_eq!(e.simple_lemma_embed(&t4, 1, &p("FBF"), None), Err(EmbedError::NotExtreme(1)));
        // sink form: P-(1,2) is the excluded pattern
        let sink = t4.complement();
        assert!(matches!(
            e.simple_lemma_embed(&sink, 0, &p("BFF"), None),
            Err(EmbedError::ExceptionalPair { .. })
        ));
    }

    #[test]
    fn degenerate_orders() {
        let e = Embedder::default();
        let one = Tournament::transitive(1);
        assert_eq!(e.embed(&one, &PathPattern::trivial()).unwrap().witness().unwrap().seq, vec![0]);
        let two = Tournament::transitive(2);
        assert_eq!(e.embed(&two, &p("B")).unwrap().witness().unwrap().seq, vec![1, 0]);
    }
}
