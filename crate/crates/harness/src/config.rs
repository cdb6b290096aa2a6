//! Sweep configuration, read from `key = value` lines.
//!
//! ```text
//! n = 3..6              # or a single order, or a list: 3,5,7
//! tournaments = exhaustive | iso | random(uniform, 1000, 42)
//! patterns = all | random(4, 9) | +-+-; FBBF; P+(1,2)
//! oracle_fraction = 1
//! seed = 0              # oracle sampling
//! n0 = 8
//! flips = 0             # near_regular flips
//! timing = true
//! output = records.jsonl
//! ```

use std::path::PathBuf;

use tourpath_core::{PathPattern, DEFAULT_N0};

use crate::gen::{Model, MAX_LABELED};
use crate::HarnessError;

#[derive(Debug, Clone, PartialEq)]
pub enum TournamentSource {
    Exhaustive,
    Iso { allow_eight: bool },
    Random { model: Model, count: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum PatternSource {
    All,
    Random { count: u64, seed: u64 },
    List(Vec<PathPattern>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub orders: Vec<usize>,
    pub tournaments: TournamentSource,
    pub patterns: PatternSource,
    pub oracle_fraction: f64,
    pub seed: u64,
    pub n0: usize,
    pub timing: bool,
    pub output_path: Option<PathBuf>,
}

/// Largest order for which `patterns = all` is accepted.
pub const MAX_ALL_PATTERNS: usize = 20;

impl SweepConfig {
    pub fn new(orders: Vec<usize>, tournaments: TournamentSource, patterns: PatternSource) -> Self {
        let mut cfg = SweepConfig {
            orders,
            tournaments,
            patterns,
            oracle_fraction: 0.0,
            seed: 0,
            n0: DEFAULT_N0,
            timing: true,
            output_path: None,
        };
        if cfg.full_cross_check_required() {
            cfg.oracle_fraction = 1.0;
        }
        cfg
    }

    fn full_cross_check_required(&self) -> bool {
        self.tournaments == TournamentSource::Exhaustive && self.orders.iter().any(|&n| n <= 6)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |msg: String| Err(HarnessError::Config { line: 0, msg });
        if self.orders.is_empty() {
            return bad("no orders given".into());
        }
        if let Some(&n) = self.orders.iter().find(|&&n| n == 0) {
            return bad(format!("order {n} out of range"));
        }
        if !(0.0..=1.0).contains(&self.oracle_fraction) {
            return bad(format!("oracle_fraction {} outside [0, 1]", self.oracle_fraction));
        }
        if self.full_cross_check_required() && self.oracle_fraction != 1.0 {
            return bad("exhaustive sweeps with n <= 6 require oracle_fraction = 1".into());
        }
        match self.tournaments {
            TournamentSource::Exhaustive => {
                if let Some(&n) = self.orders.iter().find(|&&n| n > MAX_LABELED) {
                    return bad(format!("exhaustive enumeration limited to n <= {MAX_LABELED}, got {n}"));
                }
            }
            TournamentSource::Iso { allow_eight } => {
                let limit = if allow_eight { 8 } else { MAX_LABELED };
                if let Some(&n) = self.orders.iter().find(|&&n| n > limit) {
                    return bad(format!("iso classes limited to n <= {limit}, got {n}"));
                }
            }
            TournamentSource::Random { model: Model::NearRegular { .. }, .. } => {
                if let Some(&n) = self.orders.iter().find(|&&n| n % 2 == 0) {
                    return bad(format!("near_regular needs odd orders, got {n}"));
                }
            }
            TournamentSource::Random { .. } => {}
        }
        match &self.patterns {
            PatternSource::All => {
                if let Some(&n) = self.orders.iter().find(|&&n| n > MAX_ALL_PATTERNS) {
                    return bad(format!("patterns = all limited to n <= {MAX_ALL_PATTERNS}, got {n}"));
                }
            }
            PatternSource::List(list) => {
                if self.orders.len() != 1 || list.iter().any(|p| p.order() != self.orders[0]) {
                    return bad("an explicit pattern list needs a single order matching every pattern".into());
                }
            }
            PatternSource::Random { .. } => {}
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let mut orders = None;
        let mut tournaments = None;
        let mut patterns = None;
        let mut fraction = None;
        let mut seed = 0;
        let mut n0 = DEFAULT_N0;
        let mut flips = 0;
        let mut timing = true;
        let mut output_path = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |msg: String| HarnessError::Config { line, msg };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| err("expected key = value".into()))?;
            let (key, value) = (key.trim(), value.trim());
            let num = |v: &str| v.trim().parse::<u64>().map_err(|_| err(format!("{v:?} is not an integer")));
            match key {
                "n" => orders = Some(parse_orders(value).map_err(err)?),
                "tournaments" => tournaments = Some(parse_tournaments(value).map_err(err)?),
                "patterns" => patterns = Some(parse_patterns(value).map_err(err)?),
                "oracle_fraction" => {
                    fraction = Some(value.parse::<f64>().map_err(|_| err(format!("{value:?} is not a number")))?)
                }
                "seed" => seed = num(value)?,
                "n0" => n0 = num(value)? as usize,
                "flips" => flips = num(value)? as usize,
                "timing" => {
                    timing = value.parse::<bool>().map_err(|_| err(format!("{value:?} is not true or false")))?
                }
                "output" => output_path = Some(PathBuf::from(value)),
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }
        let missing = |k: &str| HarnessError::Config { line: 0, msg: format!("missing key {k:?}") };
        let mut tournaments = tournaments.ok_or_else(|| missing("tournaments"))?;
        if let TournamentSource::Random { model: Model::NearRegular { flips: f }, .. } = &mut tournaments {
            *f = flips;
        }
        let mut cfg = SweepConfig::new(
            orders.ok_or_else(|| missing("n"))?,
            tournaments,
            patterns.ok_or_else(|| missing("patterns"))?,
        );
        if let Some(f) = fraction {
            cfg.oracle_fraction = f;
        }
        cfg.seed = seed;
        cfg.n0 = n0;
        cfg.timing = timing;
        cfg.output_path = output_path;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_orders(v: &str) -> Result<Vec<usize>, String> {
    let int = |s: &str| s.trim().parse::<usize>().map_err(|_| format!("{s:?} is not an order"));
    if let Some((a, b)) = v.split_once("..") {
        let (a, b) = (int(a)?, int(b.trim_start_matches('='))?);
        if a > b {
            return Err(format!("empty range {v}"));
        }
        return Ok((a..=b).collect());
    }
    v.split(',').map(int).collect()
}

/// Splits `name(a, b, c)` into `name` and its arguments.
fn call(v: &str) -> Option<(&str, Vec<&str>)> {
    let (name, rest) = v.split_once('(')?;
    let args = rest.strip_suffix(')')?;
    Some((name.trim(), args.split(',').map(str::trim).collect()))
}

fn parse_tournaments(v: &str) -> Result<TournamentSource, String> {
    match v {
        "exhaustive" => return Ok(TournamentSource::Exhaustive),
        "iso" => return Ok(TournamentSource::Iso { allow_eight: false }),
        "iso8" => return Ok(TournamentSource::Iso { allow_eight: true }),
        _ => {}
    }
    match call(v) {
        Some(("random", args)) if args.len() == 3 => {
            let model = args[0].parse::<Model>().map_err(|e| e.to_string())?;
            let count = args[1].parse().map_err(|_| format!("{:?} is not a count", args[1]))?;
            let seed = args[2].parse().map_err(|_| format!("{:?} is not a seed", args[2]))?;
            Ok(TournamentSource::Random { model, count, seed })
        }
        _ => Err(format!("unknown tournament source {v:?}")),
    }
}

fn parse_patterns(v: &str) -> Result<PatternSource, String> {
    if v == "all" {
        return Ok(PatternSource::All);
    }
    match call(v) {
        Some(("random", args)) if args.len() == 2 => {
            let count = args[0].parse().map_err(|_| format!("{:?} is not a count", args[0]))?;
            let seed = args[1].parse().map_err(|_| format!("{:?} is not a seed", args[1]))?;
            Ok(PatternSource::Random { count, seed })
        }
        _ => v
            .split(';')
            .map(|p| p.trim().parse::<PathPattern>().map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()
            .map(PatternSource::List),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_config() {
        let cfg = SweepConfig::parse(
            "# comment\nn = 5,7\ntournaments = random(near_regular, 10, 3)\npatterns = random(2, 9)\nflips = 2\noracle_fraction = 0.5\noutput = out.jsonl\n",
        )
        .unwrap();
        assert_eq!(cfg.orders, vec![5, 7]);
        assert_eq!(cfg.tournaments, TournamentSource::Random { model: Model::NearRegular { flips: 2 }, count: 10, seed: 3 });
        assert_eq!(cfg.output_path, Some(PathBuf::from("out.jsonl")));
        assert_eq!(SweepConfig::parse("n = 3..=6\ntournaments = iso\npatterns = all\n").unwrap().orders, vec![3, 4, 5, 6]);
        let cfg = SweepConfig::parse("n = 3,5\ntournaments = exhaustive\npatterns = all\n").unwrap();
        assert_eq!(cfg.oracle_fraction, 1.0);
        let cfg = SweepConfig::parse("n = 4\ntournaments = iso\npatterns = +-+; FFB\n").unwrap();
        assert!(matches!(cfg.patterns, PatternSource::List(ref l) if l.len() == 2));
    }

    #[test]
    fn rejects_bad_configs() {
        for text in [
            "n = 5\ntournaments = exhaustive\npatterns = all\noracle_fraction = 0.5\n",
            "n = 8\ntournaments = exhaustive\npatterns = all\n",
            "n = 5\ntournaments = random(uniform, 3)\npatterns = all\n",
            "n = 5\ntournaments = iso\n",
            "n = 5\ntournaments = iso\npatterns = all\ncolour = red\n",
            "n = 6\ntournaments = random(near_regular, 1, 1)\npatterns = all\n",
        ] {
            assert!(SweepConfig::parse(text).is_err(), "{text}");
        }
    }
}
