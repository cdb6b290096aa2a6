use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tourpath_core::{oracle_embed, Dir, validate, Embedder, OriginConstraint, PathPattern, Step, Tournament};

fn pair_count(n: usize) -> u32 {
    (n * (n - 1) / 2) as u32
}

fn random_tournament(rng: &mut ChaCha8Rng, n: usize) -> Tournament {
    Tournament::from_fn(n, |_, _| rng.next_u64() & 1 == 1)
}

fn random_pattern(rng: &mut ChaCha8Rng, n: usize) -> PathPattern {
    let dirs = (0..n - 1).map(|_| if rng.next_u64() & 1 == 1 { Dir::B } else { Dir::F }).collect();
    PathPattern::from_dirs(dirs)
}

/// With the smallest base threshold every constructive branch runs; results
/// must agree with exhaustive search on all tournaments up to six vertices.
#[test]
fn low_threshold_matches_oracle_exhaustively() {
    let e = Embedder::new(2);
    for n in 3..=6 {
        for idx in 0..1u64 << pair_count(n) {
            let t = Tournament::from_index(n, idx);
            for p in PathPattern::all(n) {
                let truth = oracle_embed(&t, &p, &OriginConstraint::none()).unwrap().is_some();
                let out = e.embed(&t, &p).unwrap_or_else(|err| panic!("{} {p}: {err}", t.to_code()));
                assert_eq!(out.witness().is_some(), truth, "{} {p}", t.to_code());
                if let Some(w) = out.witness() {
                    assert!(validate(&t, &p, &w.seq));
                }
            }
        }
    }
}

#[test]
fn low_threshold_random_seven_and_eight() {
    let e = Embedder::new(2);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20_000 {
        let n = 7 + (rng.next_u64() % 2) as usize;
        let t = random_tournament(&mut rng, n);
        let p = random_pattern(&mut rng, n);
        let truth = oracle_embed(&t, &p, &OriginConstraint::none()).unwrap().is_some();
        let out = e.embed(&t, &p).unwrap();
        assert_eq!(out.witness().is_some(), truth, "{} {p}", t.to_code());
    }
}

#[test]
fn random_instances_need_no_large_exact_search() {
    let e = Embedder::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut thm3 = 0;
    for i in 0..2000 {
        let n = 9 + (rng.next_u64() % 56) as usize;
        let t = random_tournament(&mut rng, n);
        let p = random_pattern(&mut rng, n);
        let out = e.embed(&t, &p).unwrap();
        let w = out.witness().expect("no exceptions above seven vertices");
        assert!(validate(&t, &p, &w.seq));
        assert_eq!(out.method.oracle_fallbacks_above(8), 0, "instance {i}: {} {p} via {}", t.to_code(), out.method);
        thm3 += usize::from(out.method.thm3_fallback());
    }
    println!("thm3 fallbacks: {thm3}/2000");
}

#[test]
fn large_orders_are_fast() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let t = random_tournament(&mut rng, 1000);
    let p = random_pattern(&mut rng, 1000);
    let start = std::time::Instant::now();
    let out = Embedder::default().embed(&t, &p).unwrap();
    assert!(validate(&t, &p, &out.witness().unwrap().seq));
    assert!(!out.method.contains(|s| matches!(s, Step::OracleFallback(_))));
    println!("n=1000: {:?}", start.elapsed());
}
