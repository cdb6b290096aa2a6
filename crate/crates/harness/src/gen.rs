//! Tournament and pattern sources for sweeps.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use tourpath_core::{canonical_form, Dir, PathPattern, Tournament};

use crate::HarnessError;

/// Largest order enumerated label by label.
pub const MAX_LABELED: usize = 7;

fn pairs(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

/// Every labeled tournament on `n` vertices, in encoding order.
pub fn gen_all(n: usize) -> Result<impl Iterator<Item = Tournament>, HarnessError> {
    if n == 0 || n > MAX_LABELED {
        return Err(HarnessError::Input(format!(
            "labeled enumeration supports 1..={MAX_LABELED} vertices, got {n}; use iso classes or random tournaments"
        )));
    }
    Ok((0..1u64 << pairs(n)).map(move |i| Tournament::from_index(n, i)))
}

/// One representative per isomorphism class, the canonical form of each,
/// ordered by canonical code. Order 8 is built by extending the order-7
/// classes by one vertex in every way and needs `allow_eight`.
pub fn iso_classes(n: usize, allow_eight: bool) -> Result<Vec<Tournament>, HarnessError> {
    match n {
        1..=MAX_LABELED => {
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            for t in gen_all(n)? {
                let c = canonical_form(&t)?;
                if seen.insert(c.code) {
                    out.push((c.code, c.tournament()));
                }
            }
            out.sort_by_key(|(code, _)| *code);
            Ok(out.into_iter().map(|(_, t)| t).collect())
        }
        8 if allow_eight => {
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            for base in iso_classes(7, false)? {
                for mask in 0u32..1 << 7 {
                    let t = Tournament::from_fn(8, |u, v| if v == 7 { mask >> u & 1 == 1 } else { base.arc(u, v) });
                    let c = canonical_form(&t)?;
                    if seen.insert(c.code) {
                        out.push((c.code, c.tournament()));
                    }
                }
            }
            out.sort_by_key(|(code, _)| *code);
            Ok(out.into_iter().map(|(_, t)| t).collect())
        }
        8 => Err(HarnessError::Input("order-8 class enumeration is long-running; pass the explicit flag".into())),
        _ => Err(HarnessError::Input(format!("iso classes supported for 1..=8 vertices, got {n}"))),
    }
}

/// Random tournament models. The generator is ChaCha8 seeded from the
/// 64-bit seed; pair orientations are drawn from successive `next_u64`
/// values in row-major pair order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Uniform,
    /// Rotational tournament `i -> i+1..=i+(n-1)/2` with `flips` random
    /// pairs reversed. Odd `n` only.
    NearRegular { flips: usize },
}

impl std::str::FromStr for Model {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "uniform" => Ok(Model::Uniform),
            "near_regular" => Ok(Model::NearRegular { flips: 0 }),
            other => Err(HarnessError::Input(format!("unknown model {other:?}; expected uniform or near_regular"))),
        }
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Model::Uniform => f.write_str("uniform"),
            Model::NearRegular { .. } => f.write_str("near_regular"),
        }
    }
}

pub fn gen_random(n: usize, seed: u64, model: Model) -> Result<Tournament, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match model {
        _ if n == 0 => Err(HarnessError::Input("random tournaments need at least one vertex".into())),
        Model::Uniform => Ok(Tournament::from_fn(n, |_, _| rng.next_u64() & 1 == 1)),
        Model::NearRegular { .. } if n.is_multiple_of(2) => {
            Err(HarnessError::Input(format!("near_regular needs an odd order, got {n}")))
        }
        Model::NearRegular { flips } => {
            let mut flipped = HashSet::new();
            for _ in 0..flips {
                if n < 2 {
                    break;
                }
                let u = (rng.next_u64() % n as u64) as usize;
                let mut v = (rng.next_u64() % (n as u64 - 1)) as usize;
                if v >= u {
                    v += 1;
                }
                let key = (u.min(v), u.max(v));
                if !flipped.remove(&key) {
                    flipped.insert(key);
                }
            }
            Ok(Tournament::from_fn(n, |u, v| (v - u <= (n - 1) / 2) != flipped.contains(&(u, v))))
        }
    }
}

/// Uniformly random pattern with `n` vertices.
pub fn random_pattern(n: usize, rng: &mut ChaCha8Rng) -> PathPattern {
    PathPattern::from_dirs((1..n).map(|_| if rng.next_u64() & 1 == 1 { Dir::B } else { Dir::F }).collect())
}
