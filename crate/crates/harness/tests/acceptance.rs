//! Acceptance criteria, one pass/fail line each.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tourpath::{gen_all, gen_random, iso_classes, random_pattern, sweep, Model, PatternSource, SweepConfig, TournamentSource};
use tourpath_core::{
    automorphism_count, choose_variant, classify_small, count_embeddings, count_with_origin, deletion_critical,
    deletion_partner, oracle_embed, validate, EmbedError, Embedder, ExceptionKind, OriginConstraint, PathPattern,
    Tournament,
};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn labeled_isomorphs(kind: ExceptionKind) -> u64 {
    gen_all(kind.order()).unwrap().filter(|t| classify_small(t).is_some_and(|c| c.kind == kind)).count() as u64
}

fn orbit_size(kind: ExceptionKind) -> u64 {
    let n = kind.order() as u64;
    (1..=n).product::<u64>() / automorphism_count(&kind.representative()).unwrap() as u64
}

fn antidirected_pair(n: usize) -> BTreeSet<String> {
    PathPattern::all(n).filter(|p| p.is_antidirected()).map(|p| p.to_string()).collect()
}

fn exhaustive_small() -> Verdict {
    let mut cfg = SweepConfig::new(vec![3, 4, 5, 6], TournamentSource::Exhaustive, PatternSource::All);
    cfg.timing = false;
    let s = sweep(&cfg, None).map_err(|e| e.to_string())?;
    ensure(s.disagreements() == 0, || "oracle disagreements".into())?;
    for (n, kind) in [(3, Some(ExceptionKind::T3)), (4, None), (5, Some(ExceptionKind::T5)), (6, None)] {
        let st = &s.orders[&n];
        ensure(st.oracle_checked == st.instances, || format!("n={n}: not every instance cross-checked"))?;
        let expected_instances = (1u64 << (n * (n - 1) / 2)) << (n - 1);
        ensure(st.instances == expected_instances, || format!("n={n}: {} instances", st.instances))?;
        match kind {
            None => ensure(st.exceptions == 0, || format!("n={n}: unexpected exceptions"))?,
            Some(k) => {
                let iso = labeled_isomorphs(k);
                ensure(iso == orbit_size(k) && st.failing_tournaments == iso, || {
                    format!("n={n}: {} failing tournaments, {iso} labeled {k}", st.failing_tournaments)
                })?;
                ensure(st.exceptions == 2 * iso, || format!("n={n}: {} exceptions", st.exceptions))?;
                ensure(st.failing_patterns == antidirected_pair(n), || format!("n={n}: failing patterns"))?;
            }
        }
    }
    Ok(format!("{} instances, 0 disagreements, failures at 2 labeled T3 and 24 labeled T5", s.instances()))
}

fn census_seven() -> Verdict {
    let mut cfg = SweepConfig::new(vec![7], TournamentSource::Exhaustive, PatternSource::All);
    cfg.timing = false;
    cfg.oracle_fraction = 0.01;
    cfg.seed = 7;
    let s = sweep(&cfg, None).map_err(|e| e.to_string())?;
    let st = &s.orders[&7];
    let iso = labeled_isomorphs(ExceptionKind::T7);
    let orbit = orbit_size(ExceptionKind::T7);
    ensure(st.instances == (1u64 << 21) * 64, || format!("{} instances", st.instances))?;
    ensure(iso == orbit, || format!("classify counts {iso}, 7!/|Aut| = {orbit}"))?;
    ensure(st.failing_tournaments == iso, || format!("{} failing tournaments vs {iso}", st.failing_tournaments))?;
    ensure(st.exceptions == 2 * iso, || format!("{} exceptions", st.exceptions))?;
    ensure(st.failing_patterns == antidirected_pair(7), || "failing patterns".into())?;
    ensure(s.census.keys().all(|(_, c)| c == "T7"), || "census lists other classes".into())?;
    ensure(s.disagreements() == 0, || "oracle disagreements".into())?;
    Ok(format!(
        "{} instances, failing tournaments {} = 7!/21, oracle-checked {}",
        st.instances, st.failing_tournaments, st.oracle_checked
    ))
}

fn grunbaum_facts() -> Verdict {
    let mut checked = 0;
    for n in [3, 5, 7] {
        let anti: Vec<PathPattern> = PathPattern::all(n).filter(|p| p.is_antidirected()).collect();
        for t in iso_classes(n, false).map_err(|e| e.to_string())? {
            let exceptional = classify_small(&t).is_some_and(|c| c.kind.is_grunbaum());
            for p in &anti {
                let c = count_embeddings(&t, p).map_err(|e| e.to_string())?;
                ensure((c == 0) == exceptional, || format!("{} {p}: count {c}", t.to_code()))?;
                checked += 1;
            }
        }
    }
    let mut origins = 0;
    for kind in [ExceptionKind::T3, ExceptionKind::T5, ExceptionKind::T7] {
        let t = kind.representative();
        for p in PathPattern::all(t.order()) {
            if count_embeddings(&t, &p).map_err(|e| e.to_string())? == 0 {
                continue;
            }
            for v in 0..t.order() {
                let c = count_with_origin(&t, &p, &OriginConstraint::origin(v)).map_err(|e| e.to_string())?;
                ensure(c > 0, || format!("{kind} {p}: vertex {v} is no origin"))?;
                origins += 1;
            }
        }
    }
    Ok(format!("{checked} class/pattern counts, {origins} origin checks"))
}

fn lemma_suite() -> Verdict {
    let mut tournaments = 0u64;
    for n in 1..=7 {
        for t in gen_all(n).unwrap() {
            let k = deletion_critical(&t).len();
            ensure(k <= 2, || format!("{}: {k} deletion-critical vertices", t.to_code()))?;
            tournaments += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100_000 {
        let t = gen_random(8, rng.next_u64(), Model::Uniform).unwrap();
        let k = deletion_critical(&t).len();
        ensure(k <= 2, || format!("{}: {k} deletion-critical vertices", t.to_code()))?;
    }
    for kind in [ExceptionKind::T3, ExceptionKind::T5, ExceptionKind::T7] {
        let t = kind.representative();
        for x in 0..t.order() {
            ensure(deletion_partner(&t, x).is_some(), || format!("{kind}: no partner for {x}"))?;
        }
    }
    let e = Embedder::default();
    let mut lemma_cases = 0u64;
    for n in 3..=7 {
        for rest in gen_all(n - 1).unwrap() {
            // vertex 0 is the source, the rest is relabeled to 1..n
            let t = Tournament::from_fn(n, |u, v| u == 0 || rest.arc(u - 1, v - 1));
            let sink = t.complement();
            let rest_exceptional = classify_small(&rest).is_some_and(|c| c.kind.is_grunbaum());
            let rest_cyclic = n == 4 && rest_exceptional;
            for p in PathPattern::all(n).filter(|p| !p.is_directed()) {
                for (host, excluded, is_sink) in [(&t, "+--", false), (&sink, "-++", true)] {
                    let r = e.simple_lemma_embed(host, 0, &p, None);
                    if rest_cyclic && p.to_string() == excluded {
                        ensure(matches!(r, Err(EmbedError::ExceptionalPair { .. })), || {
                            format!("{} {p}: exceptional pair not reported", host.to_code())
                        })?;
                        continue;
                    }
                    let w = r.map_err(|err| format!("{} {p}: {err}", host.to_code()))?;
                    ensure(validate(host, &p, &w.seq) && w.origin() != 0, || {
                        format!("{} {p}: bad copy {:?}", host.to_code(), w.seq)
                    })?;
                    let (sources, sinks) = p.sources_sinks();
                    let starts = if is_sink { sinks } else { sources };
                    if starts.iter().any(|&j| j > 0 && j + 1 < n) {
                        ensure(w.end() != 0, || format!("{} {p}: source at an extremity", host.to_code()))?;
                    }
                    if rest_exceptional {
                        for o in 1..n {
                            let w = e
                                .simple_lemma_embed(host, 0, &p, Some(o))
                                .map_err(|err| format!("{} {p} origin {o}: {err}", host.to_code()))?;
                            ensure(validate(host, &p, &w.seq) && w.origin() == o, || "origin not honoured".into())?;
                        }
                    }
                    lemma_cases += 1;
                }
            }
        }
    }
    Ok(format!("{tournaments} tournaments + 100000 random at n=8, {lemma_cases} source-insertion cases"))
}

fn complement_equivalence() -> Verdict {
    let mut checked = 0u64;
    for n in 1..=5 {
        for t in gen_all(n).unwrap() {
            let c = t.complement();
            for p in PathPattern::all(n) {
                let a = oracle_embed(&t, &p, &OriginConstraint::none()).unwrap().is_some();
                let b = oracle_embed(&c, &p, &OriginConstraint::none()).unwrap().is_some();
                ensure(a == b, || format!("{} {p}", t.to_code()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} instances"))
}

fn scale() -> Verdict {
    let e = Embedder::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut thm3, mut qualifying, mut fallbacks_qualifying, mut fallbacks_total) = (0, 0, 0, 0);
    for i in 0..10_000 {
        let n = 8 + (rng.next_u64() % 57) as usize;
        let t = gen_random(n, rng.next_u64(), Model::Uniform).unwrap();
        let p = random_pattern(n, &mut rng);
        let out = e.embed(&t, &p).map_err(|err| format!("instance {i}: {err}"))?;
        let w = out.witness().ok_or_else(|| format!("instance {i}: exception at n={n}"))?;
        ensure(validate(&t, &p, &w.seq), || format!("instance {i}: invalid witness"))?;
        let f = out.method.oracle_fallbacks_above(e.n0());
        fallbacks_total += f;
        thm3 += usize::from(out.method.thm3_fallback());
        if choose_variant(&t, &p).qualifies {
            qualifying += 1;
            fallbacks_qualifying += f;
        }
    }
    ensure(fallbacks_qualifying == 0, || format!("{fallbacks_qualifying} oracle fallbacks above N0"))?;
    Ok(format!(
        "10000 valid witnesses, thm3_fallback in {thm3} traces ({:.2}%), {qualifying} top-level qualifying, \
         oracle fallbacks above N0: {fallbacks_total}",
        thm3 as f64 / 100.0
    ))
}

fn performance() -> Verdict {
    let big = gen_random(10_000, 5, Model::Uniform).unwrap();
    let start = Instant::now();
    let path = big.hamiltonian_directed_path();
    let redei = start.elapsed();
    ensure(path.len() == 10_000 && path.windows(2).all(|w| big.arc(w[0], w[1])), || "bad path".into())?;
    ensure(redei.as_secs_f64() < 1.0, || format!("directed path took {redei:?}"))?;
    let t = gen_random(1000, 6, Model::Uniform).unwrap();
    let p = random_pattern(1000, &mut ChaCha8Rng::seed_from_u64(6));
    let start = Instant::now();
    let out = Embedder::default().embed(&t, &p).map_err(|e| e.to_string())?;
    let embed = start.elapsed();
    ensure(out.witness().is_some_and(|w| validate(&t, &p, &w.seq)), || "invalid witness".into())?;
    ensure(embed.as_secs_f64() < 10.0, || format!("embed took {embed:?}"))?;
    Ok(format!("directed path n=10000 in {redei:?}, embed n=1000 in {embed:?}"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 exhaustive agreement n=3..6", exhaustive_small),
        ("2 census n=7", census_seven),
        ("3 exception facts", grunbaum_facts),
        ("4 lemma suite", lemma_suite),
        ("5 complement equivalence n<=5", complement_equivalence),
        ("6 scale n=8..64", scale),
        ("7 performance floor", performance),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS  criterion {name} ({secs:.1}s): {detail}"),
            Err(detail) => {
                println!("FAIL  criterion {name} ({secs:.1}s): {detail}");
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
