//! Aggregates over a record stream, rendered as text or CSV.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OrderStats {
    pub instances: u64,
    pub witnesses: u64,
    pub exceptions: u64,
    pub oracle_checked: u64,
    pub disagreements: u64,
    pub thm3_fallback: u64,
    pub oracle_fallbacks: u64,
    pub failing_tournaments: u64,
    pub failing_patterns: BTreeSet<String>,
    /// Elapsed microseconds -> count.
    pub times: BTreeMap<u64, u64>,
    last_failing: Option<String>,
}

impl OrderStats {
    /// Nearest-rank percentile of the elapsed times.
    pub fn percentile(&self, q: f64) -> u64 {
        let total: u64 = self.times.values().sum();
        if total == 0 {
            return 0;
        }
        let rank = ((q * total as f64).ceil() as u64).clamp(1, total);
        let mut seen = 0;
        for (&t, &c) in &self.times {
            seen += c;
            if seen >= rank {
                return t;
            }
        }
        0
    }
}

/// One instance as seen by the summary.
#[derive(Debug, Clone)]
pub struct Observation<'a> {
    pub n: usize,
    pub tournament: &'a str,
    pub pattern: &'a str,
    /// Exception class name, or `None` for a witness.
    pub exception: Option<&'a str>,
    pub method: &'a [String],
    pub oracle_checked: bool,
    pub agree: Option<bool>,
    pub elapsed_us: u64,
    /// Exact searches on sub-instances above the base threshold.
    pub oracle_fallbacks: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Summary {
    pub orders: BTreeMap<usize, OrderStats>,
    /// `(n, class)` -> number of exception instances.
    pub census: BTreeMap<(usize, String), u64>,
    /// Step label -> number of instances whose trace contains it.
    pub methods: BTreeMap<String, u64>,
}

impl Summary {
    pub fn add(&mut self, o: &Observation<'_>) {
        let s = self.orders.entry(o.n).or_default();
        s.instances += 1;
        s.oracle_checked += u64::from(o.oracle_checked);
        s.disagreements += u64::from(o.agree == Some(false));
        s.oracle_fallbacks += o.oracle_fallbacks;
        *s.times.entry(o.elapsed_us).or_default() += 1;
        if o.method.iter().any(|m| m == "thm3_fallback") {
            s.thm3_fallback += 1;
        }
        match o.exception {
            None => s.witnesses += 1,
            Some(class) => {
                s.exceptions += 1;
                if s.last_failing.as_deref() != Some(o.tournament) {
                    s.failing_tournaments += 1;
                    s.last_failing = Some(o.tournament.to_string());
                }
                if !s.failing_patterns.contains(o.pattern) {
                    s.failing_patterns.insert(o.pattern.to_string());
                }
                *self.census.entry((o.n, class.to_string())).or_default() += 1;
            }
        }
        let mut labels: Vec<&String> = o.method.iter().collect();
        labels.sort();
        labels.dedup();
        for l in labels {
            match self.methods.get_mut(l.as_str()) {
                Some(c) => *c += 1,
                None => {
                    self.methods.insert(l.clone(), 1);
                }
            }
        }
    }

    fn total(&self, f: impl Fn(&OrderStats) -> u64) -> u64 {
        self.orders.values().map(f).sum()
    }

    pub fn instances(&self) -> u64 {
        self.total(|s| s.instances)
    }

    pub fn exceptions(&self) -> u64 {
        self.total(|s| s.exceptions)
    }

    pub fn disagreements(&self) -> u64 {
        self.total(|s| s.disagreements)
    }

    pub fn thm3_fallbacks(&self) -> u64 {
        self.total(|s| s.thm3_fallback)
    }

    pub fn oracle_fallbacks(&self) -> u64 {
        self.total(|s| s.oracle_fallbacks)
    }

    pub fn thm3_rate(&self) -> f64 {
        match self.instances() {
            0 => 0.0,
            n => self.thm3_fallbacks() as f64 / n as f64,
        }
    }

    /// Plain-text report; identical summaries render identically.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(w, "instances: {}", self.instances());
        let _ = writeln!(w, "witnesses: {}", self.total(|s| s.witnesses));
        let _ = writeln!(w, "exceptions: {}", self.exceptions());
        let _ = writeln!(w, "oracle_checked: {}", self.total(|s| s.oracle_checked));
        let _ = writeln!(w, "disagreements: {}", self.disagreements());
        let _ = writeln!(w, "thm3_fallback: {} (rate {:.6})", self.thm3_fallbacks(), self.thm3_rate());
        let _ = writeln!(w, "oracle_fallbacks: {}", self.oracle_fallbacks());
        if self.orders.is_empty() {
            return out;
        }
        let _ = writeln!(w, "\nper order:");
        for (n, s) in &self.orders {
            let _ = writeln!(
                w,
                "  n={n}: instances={} witnesses={} exceptions={} failing_tournaments={} oracle_checked={} \
                 disagreements={} thm3_fallback={} oracle_fallbacks={} p50_us={} p90_us={} p99_us={} max_us={}",
                s.instances,
                s.witnesses,
                s.exceptions,
                s.failing_tournaments,
                s.oracle_checked,
                s.disagreements,
                s.thm3_fallback,
                s.oracle_fallbacks,
                s.percentile(0.5),
                s.percentile(0.9),
                s.percentile(0.99),
                s.percentile(1.0),
            );
        }
        let _ = writeln!(w, "\nexception census:");
        for ((n, class), c) in &self.census {
            let _ = writeln!(w, "  n={n} {class}: {c}");
        }
        for (n, s) in self.orders.iter().filter(|(_, s)| !s.failing_patterns.is_empty()) {
            let pats: Vec<&str> = s.failing_patterns.iter().map(String::as_str).collect();
            let _ = writeln!(w, "  n={n} failing patterns: {}", pats.join(" "));
        }
        let _ = writeln!(w, "\nmethod histogram:");
        for (m, c) in &self.methods {
            let _ = writeln!(w, "  {m}: {c}");
        }
        out
    }

    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut wtr = csv::Writer::from_writer(Vec::new());
        wtr.write_record([
            "n",
            "instances",
            "witnesses",
            "exceptions",
            "failing_tournaments",
            "oracle_checked",
            "disagreements",
            "thm3_fallback",
            "oracle_fallbacks",
            "p50_us",
            "p90_us",
            "p99_us",
            "max_us",
        ])?;
        for (n, s) in &self.orders {
            let row = [
                *n as u64,
                s.instances,
                s.witnesses,
                s.exceptions,
                s.failing_tournaments,
                s.oracle_checked,
                s.disagreements,
                s.thm3_fallback,
                s.oracle_fallbacks,
                s.percentile(0.5),
                s.percentile(0.9),
                s.percentile(0.99),
                s.percentile(1.0),
            ];
            wtr.write_record(row.iter().map(u64::to_string))?;
        }
        let bytes = wtr.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is ascii"))
    }
}
