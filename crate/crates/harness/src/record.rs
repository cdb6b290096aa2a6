//! One JSONL line per verified instance.

use serde::{Deserialize, Serialize};
use tourpath_core::{classify_small, validate, PathPattern, Tournament};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordOutcome {
    Witness(Vec<usize>),
    /// Class name: `T3`, `T5` or `T7`.
    Exception(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub id: u64,
    pub tournament: String,
    pub pattern: String,
    pub outcome: RecordOutcome,
    pub method: Vec<String>,
    pub oracle_checked: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    pub elapsed_us: u64,
}

impl VerificationRecord {
    /// Decodes the instance and checks the stored outcome against it.
    pub fn revalidate(&self) -> Result<(Tournament, PathPattern), String> {
        let t = Tournament::from_code(&self.tournament).map_err(|e| e.to_string())?;
        let p: PathPattern = self.pattern.parse().map_err(|e: tourpath_core::PatternError| e.to_string())?;
        if t.order() != p.order() {
            return Err(format!("tournament has {} vertices, pattern {}", t.order(), p.order()));
        }
        if self.agree.is_some() != self.oracle_checked {
            return Err("agree must be present exactly when oracle_checked".into());
        }
        if self.method.is_empty() {
            return Err("empty method trace".into());
        }
        match &self.outcome {
            RecordOutcome::Witness(seq) => {
                if !validate(&t, &p, seq) {
                    return Err(format!("witness {seq:?} does not realize the pattern"));
                }
            }
            RecordOutcome::Exception(class) => {
                let actual = classify_small(&t).filter(|c| c.kind.is_grunbaum()).map(|c| c.kind.name());
                if actual != Some(class.as_str()) || !p.is_antidirected() {
                    return Err(format!("exception {class} does not match the instance"));
                }
            }
        }
        Ok((t, p))
    }
}
