//! Re-validation and aggregation of stored sweep output.

use std::io::BufRead;

use crate::record::{RecordOutcome, VerificationRecord};
use crate::summary::{Observation, Summary};
use crate::HarnessError;

/// Reads JSONL records, re-validates each one and aggregates them.
/// `base_threshold` decides which `oracle_fallback:<k>` labels count.
pub fn report(input: impl BufRead, base_threshold: usize) -> Result<Summary, HarnessError> {
    let mut summary = Summary::default();
    for (i, line) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let corrupt = |msg: String| HarnessError::Corrupt { line: line_no, msg };
        let r: VerificationRecord = serde_json::from_str(&line).map_err(|e| corrupt(e.to_string()))?;
        let (t, _) = r.revalidate().map_err(corrupt)?;
        let fallbacks = r
            .method
            .iter()
            .filter_map(|m| m.strip_prefix("oracle_fallback:")?.parse::<usize>().ok())
            .filter(|&k| k > base_threshold)
            .count();
        summary.add(&Observation {
            n: t.order(),
            tournament: &r.tournament,
            pattern: &r.pattern,
            exception: match &r.outcome {
                RecordOutcome::Witness(_) => None,
                RecordOutcome::Exception(c) => Some(c),
            },
            method: &r.method,
            oracle_checked: r.oracle_checked,
            agree: r.agree,
            elapsed_us: r.elapsed_us,
            oracle_fallbacks: fallbacks as u64,
        });
    }
    Ok(summary)
}
