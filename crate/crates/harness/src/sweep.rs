//! Parallel verification sweeps.
//!
//! Tournaments are processed in fixed-size chunks; each chunk is mapped in
//! parallel and merged back in instance order, so the record stream does
//! not depend on the thread count.

use std::time::Instant;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use tourpath_core::{oracle_embed, validate, EmbedOutcome, Embedder, OriginConstraint, Outcome, PathPattern, Tournament};

use crate::config::{PatternSource, SweepConfig, TournamentSource};
use crate::gen::{gen_all, gen_random, iso_classes, random_pattern};
use crate::record::{RecordOutcome, VerificationRecord};
use crate::summary::{Observation, Summary};
use crate::HarnessError;

const CHUNK: usize = 1024;

/// Thread count from `TOURPATH_THREADS`; `None` lets rayon decide.
pub fn thread_count() -> Option<usize> {
    std::env::var("TOURPATH_THREADS").ok()?.trim().parse().ok().filter(|&n| n > 0)
}

pub fn thread_pool() -> Result<rayon::ThreadPool, HarnessError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count() {
        b = b.num_threads(n);
    }
    b.build().map_err(|e| HarnessError::Input(format!("thread pool: {e}")))
}

/// SplitMix64 finalizer, used to derive independent sub-seeds.
pub fn mix(a: u64, b: u64) -> u64 {
    let mut z = a ^ b.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Whether instance `id` gets an oracle cross-check.
pub fn oracle_sampled(seed: u64, id: u64, fraction: f64) -> bool {
    if fraction >= 1.0 {
        return true;
    }
    let u = (mix(seed, id) >> 11) as f64 / (1u64 << 53) as f64;
    u < fraction
}

fn tournaments(cfg: &SweepConfig, n: usize) -> Result<Box<dyn Iterator<Item = Tournament>>, HarnessError> {
    Ok(match cfg.tournaments {
        TournamentSource::Exhaustive => Box::new(gen_all(n)?),
        TournamentSource::Iso { allow_eight } => Box::new(iso_classes(n, allow_eight)?.into_iter()),
        TournamentSource::Random { model, count, seed } => {
            let base = mix(seed, n as u64);
            let ts = (0..count).map(|i| gen_random(n, mix(base, i), model)).collect::<Result<Vec<_>, _>>()?;
            Box::new(ts.into_iter())
        }
    })
}

fn patterns(cfg: &SweepConfig, n: usize, tidx: u64, all: &[PathPattern]) -> Vec<PathPattern> {
    match &cfg.patterns {
        PatternSource::All => all.to_vec(),
        PatternSource::List(list) => list.clone(),
        PatternSource::Random { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(mix(mix(*seed, n as u64), tidx));
            (0..*count).map(|_| random_pattern(n, &mut rng)).collect()
        }
    }
}

struct Checked {
    id: u64,
    code: Option<String>,
    pattern: PathPattern,
    outcome: EmbedOutcome,
    labels: Vec<String>,
    oracle: Option<bool>,
    elapsed_us: u64,
}

fn fail(t: &Tournament, p: &PathPattern, reason: String) -> HarnessError {
    HarnessError::Verification { reason, code: t.to_code(), pattern: p.to_string() }
}

fn check_tournament(
    cfg: &SweepConfig,
    embedder: &Embedder,
    t: &Tournament,
    pats: Vec<PathPattern>,
    first_id: u64,
    want_codes: bool,
) -> Result<Vec<Checked>, HarnessError> {
    let timed: Vec<(Result<EmbedOutcome, _>, u64)> = if cfg.timing {
        pats.iter()
            .map(|p| {
                let start = Instant::now();
                let r = embedder.embed(t, p);
                (r, start.elapsed().as_micros() as u64)
            })
            .collect()
    } else {
        embedder.embed_all(t, &pats).into_iter().map(|r| (r, 0)).collect()
    };
    let mut out = Vec::with_capacity(pats.len());
    for (k, (pattern, (result, elapsed_us))) in pats.into_iter().zip(timed).enumerate() {
        let id = first_id + k as u64;
        let outcome = result.map_err(|e| fail(t, &pattern, e.to_string()))?;
        if let Outcome::Witness(w) = &outcome.result {
            if !validate(t, &pattern, &w.seq) {
                return Err(fail(t, &pattern, format!("witness {:?} does not validate", w.seq)));
            }
        }
        if outcome.method.steps.is_empty() {
            return Err(fail(t, &pattern, "empty method trace".into()));
        }
        let oracle = if oracle_sampled(cfg.seed, id, cfg.oracle_fraction) {
            let exists = oracle_embed(t, &pattern, &OriginConstraint::none())
                .map_err(|e| fail(t, &pattern, e.to_string()))?
                .is_some();
            if exists != outcome.witness().is_some() {
                return Err(fail(t, &pattern, format!("oracle says exists={exists}, embedder disagrees")));
            }
            Some(true)
        } else {
            None
        };
        let code = (want_codes || outcome.exception().is_some()).then(|| t.to_code());
        let labels = outcome.method.labels();
        out.push(Checked { id, code, pattern, outcome, labels, oracle, elapsed_us });
    }
    Ok(out)
}

pub type RecordSink<'a> = &'a mut dyn FnMut(&VerificationRecord) -> std::io::Result<()>;

/// Runs the sweep, feeding every record to `sink` in instance order.
/// Aborts on the first invalid witness or oracle disagreement.
pub fn sweep(cfg: &SweepConfig, mut sink: Option<RecordSink<'_>>) -> Result<Summary, HarnessError> {
    cfg.validate()?;
    if !(2..=8).contains(&cfg.n0) {
        return Err(HarnessError::Config { line: 0, msg: format!("n0 must be in 2..=8, got {}", cfg.n0) });
    }
    let pool = thread_pool()?;
    let embedder = Embedder::new(cfg.n0);
    let mut summary = Summary::default();
    let mut next_id = 0u64;
    let want_codes = sink.is_some();
    for &n in &cfg.orders {
        let all: Vec<PathPattern> =
            if cfg.patterns == PatternSource::All { PathPattern::all(n).collect() } else { Vec::new() };
        let mut source = tournaments(cfg, n)?.enumerate();
        loop {
            let chunk: Vec<(u64, Tournament, Vec<PathPattern>)> = source
                .by_ref()
                .take(CHUNK)
                .map(|(i, t)| {
                    let pats = patterns(cfg, n, i as u64, &all);
                    (i as u64, t, pats)
                })
                .collect();
            if chunk.is_empty() {
                break;
            }
            let mut starts = Vec::with_capacity(chunk.len());
            for (_, _, pats) in &chunk {
                starts.push(next_id);
                next_id += pats.len() as u64;
            }
            let checked: Vec<Result<Vec<Checked>, HarnessError>> = pool.install(|| {
                chunk
                    .into_par_iter()
                    .zip(starts)
                    .map(|((_, t, pats), first)| check_tournament(cfg, &embedder, &t, pats, first, want_codes))
                    .collect()
            });
            for group in checked {
                for c in group? {
                    let exception = c.outcome.exception().map(|r| r.class.kind.name());
                    let pattern = c.pattern.to_string();
                    summary.add(&Observation {
                        n,
                        tournament: c.code.as_deref().unwrap_or(""),
                        pattern: &pattern,
                        exception,
                        method: &c.labels,
                        oracle_checked: c.oracle.is_some(),
                        agree: c.oracle,
                        elapsed_us: c.elapsed_us,
                        oracle_fallbacks: c.outcome.method.oracle_fallbacks_above(cfg.n0) as u64,
                    });
                    if let Some(sink) = sink.as_mut() {
                        let outcome = match &c.outcome.result {
                            Outcome::Witness(w) => RecordOutcome::Witness(w.seq.clone()),
                            Outcome::Exception(r) => RecordOutcome::Exception(r.class.kind.name().to_string()),
                        };
                        sink(&VerificationRecord {
                            id: c.id,
                            tournament: c.code.unwrap_or_default(),
                            pattern,
                            outcome,
                            method: c.labels,
                            oracle_checked: c.oracle.is_some(),
                            agree: c.oracle,
                            elapsed_us: c.elapsed_us,
                        })?;
                    }
                }
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_seeded() {
        let hits = (0..100_000).filter(|&id| oracle_sampled(5, id, 0.01)).count();
        assert!((800..1200).contains(&hits), "{hits}");
        assert!(oracle_sampled(5, 17, 1.0));
        assert_eq!(
            (0..50).map(|id| oracle_sampled(1, id, 0.3)).collect::<Vec<_>>(),
            (0..50).map(|id| oracle_sampled(1, id, 0.3)).collect::<Vec<_>>()
        );
    }
}
