use std::collections::BTreeSet;

use tourpath::{gen_all, sweep, Model, PatternSource, SweepConfig, TournamentSource, VerificationRecord};
use tourpath_core::{choose_variant, classify_small, Embedder, ExceptionKind, PathPattern};

fn collect(cfg: &SweepConfig) -> Vec<VerificationRecord> {
    let mut out = Vec::new();
    let mut sink = |r: &VerificationRecord| -> std::io::Result<()> {
        out.push(r.clone());
        Ok(())
    };
    sweep(cfg, Some(&mut sink)).unwrap();
    out
}

fn signs(ps: &[&str]) -> BTreeSet<String> {
    ps.iter().map(|p| p.parse::<PathPattern>().unwrap().to_string()).collect()
}

#[test]
fn triangle_sweep_fails_only_on_cyclic_antidirected_pairs() {
    let cfg = SweepConfig::new(vec![3], TournamentSource::Exhaustive, PatternSource::All);
    let s = sweep(&cfg, None).unwrap();
    let st = &s.orders[&3];
    assert_eq!((st.exceptions, st.failing_tournaments, st.disagreements), (4, 2, 0));
    assert_eq!(st.failing_patterns, signs(&["FB", "BF"]));
}

#[test]
fn five_sweep_fails_only_on_t5_copies() {
    let mut cfg = SweepConfig::new(vec![5], TournamentSource::Exhaustive, PatternSource::All);
    cfg.timing = false;
    let records = collect(&cfg);
    let mut failing = BTreeSet::new();
    for r in &records {
        if let tourpath::RecordOutcome::Exception(class) = &r.outcome {
            assert_eq!(class, "T5");
            let t = tourpath_core::Tournament::from_code(&r.tournament).unwrap();
            assert_eq!(classify_small(&t).unwrap().kind, ExceptionKind::T5);
            assert!(signs(&["FBFB", "BFBF"]).contains(&r.pattern));
            failing.insert(r.tournament.clone());
        }
    }
    let t5_copies = gen_all(5).unwrap().filter(|t| classify_small(t).is_some_and(|c| c.kind == ExceptionKind::T5));
    assert_eq!(failing.len(), t5_copies.count());
}

#[test]
fn random_thirty_has_no_exceptions() {
    let mut cfg = SweepConfig::new(
        vec![30],
        TournamentSource::Random { model: Model::Uniform, count: 1000, seed: 3 },
        PatternSource::Random { count: 1, seed: 4 },
    );
    cfg.oracle_fraction = 0.0;
    let s = sweep(&cfg, None).unwrap();
    assert_eq!(s.orders[&30].instances, 1000);
    assert_eq!(s.exceptions(), 0);
    assert_eq!(s.oracle_fallbacks(), 0);
}

#[test]
fn near_regular_sweep_is_clean() {
    let mut cfg = SweepConfig::new(
        vec![9, 15],
        TournamentSource::Random { model: Model::NearRegular { flips: 3 }, count: 200, seed: 8 },
        PatternSource::Random { count: 3, seed: 9 },
    );
    cfg.oracle_fraction = 0.05;
    let s = sweep(&cfg, None).unwrap();
    assert_eq!((s.exceptions(), s.disagreements()), (0, 0));
}

#[test]
fn repeated_sweeps_are_identical() {
    let mut cfg = SweepConfig::new(
        vec![6, 10],
        TournamentSource::Random { model: Model::Uniform, count: 150, seed: 11 },
        PatternSource::Random { count: 5, seed: 12 },
    );
    cfg.timing = false;
    cfg.oracle_fraction = 0.1;
    let a = collect(&cfg);
    let b = collect(&cfg);
    assert_eq!(a, b);
    assert!(a.iter().all(|r| r.elapsed_us == 0));
}

/// Smallest labeled instance without source or sink whose top-level variant
/// choice finds no pivot; it must still be solved.
#[test]
fn smallest_unqualified_instance() {
    let e = Embedder::default();
    let found = (3..=7).find_map(|n| {
        gen_all(n).unwrap().find_map(|t| {
            if t.min_in_degree() == 0 || t.min_out_degree() == 0 {
                return None;
            }
            PathPattern::all(n).find(|p| !p.is_directed() && !choose_variant(&t, p).qualifies).map(|p| (t, p))
        })
    });
    let (t, p) = found.expect("some instance has no qualifying variant");
    println!("smallest unqualified instance: {} {p}", t.to_code());
    let out = Embedder::new(2).embed(&t, &p).unwrap();
    assert!(out.method.thm3_fallback());
    assert_eq!(out.witness().is_some(), e.embed(&t, &p).unwrap().witness().is_some());
}
