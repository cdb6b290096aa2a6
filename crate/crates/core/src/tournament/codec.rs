//! Text and compact (`T:<n>:<hex>`) encodings.

use super::{pair_count, Tournament, MAX_ORDER};
use crate::error::TournamentError;

impl Tournament {
    /// Compact code: upper-triangle pair bits row-major, first pair most
    /// significant, left-padded with zeros to whole hex digits.
    pub fn to_code(&self) -> String {
        let m = pair_count(self.n);
        let digits = m.div_ceil(4);
        let pad = digits * 4 - m;
        let mut out = String::with_capacity(digits + 12);
        out.push_str("T:");
        out.push_str(&self.n.to_string());
        out.push(':');
        let bits = self.raw_bits();
        let bit = |k: usize| -> u32 {
            // k indexes the padded stream
            if k < pad {
                0
            } else {
                let idx = k - pad;
                (bits[idx / 64] >> (idx % 64) & 1) as u32
            }
        };
        for d in 0..digits {
            let mut nib = 0;
            for j in 0..4 {
                nib = nib << 1 | bit(d * 4 + j);
            }
            out.push(char::from_digit(nib, 16).expect("nibble"));
        }
        out
    }

    pub fn from_code(code: &str) -> Result<Tournament, TournamentError> {
        let bad = |why: &str| TournamentError::Parse(format!("compact code {code:?}: {why}"));
        let rest = code.trim().strip_prefix("T:").ok_or_else(|| bad("missing `T:` prefix"))?;
        let (n_str, hex) = rest.split_once(':').ok_or_else(|| bad("missing `:` after order"))?;
        let n: usize = n_str.parse().map_err(|_| bad("order is not an integer"))?;
        if n == 0 || n > MAX_ORDER {
            return Err(TournamentError::Order(n));
        }
        let m = pair_count(n);
        let digits = m.div_ceil(4);
        // a single-vertex tournament may be written with a lone zero digit
        let hex = if m == 0 && hex == "0" { "" } else { hex };
        if hex.len() != digits {
            return Err(bad(&format!("expected {digits} hex digits, found {}", hex.len())));
        }
        let pad = digits * 4 - m;
        let mut bits = vec![0u64; m.div_ceil(64).max(1)];
        for (d, ch) in hex.chars().enumerate() {
            let nib = ch.to_digit(16).ok_or_else(|| bad("non-hex digit"))?;
            for j in 0..4 {
                let k = d * 4 + j;
                let b = nib >> (3 - j) & 1;
                if k < pad {
                    if b != 0 {
                        return Err(bad("nonzero padding bits"));
                    }
                } else if b == 1 {
                    let idx = k - pad;
                    bits[idx / 64] |= 1 << (idx % 64);
                }
            }
        }
        Ok(Tournament::from_pair_bits(n, bits))
    }

    /// Builds the `index`-th labelled tournament of order `n` in encoding
    /// order, i.e. the one whose compact code is `index` in hex.
    pub fn from_index(n: usize, index: u64) -> Tournament {
        let m = pair_count(n);
        assert!(m <= 64, "index encoding needs n <= 11");
        let mut bits = vec![0u64; m.div_ceil(64).max(1)];
        for k in 0..m {
            if index >> (m - 1 - k) & 1 == 1 {
                bits[k / 64] |= 1 << (k % 64);
            }
        }
        Tournament::from_pair_bits(n, bits)
    }

    /// Inverse of [`Tournament::from_index`].
    pub fn to_index(&self) -> u64 {
        let m = pair_count(self.n);
        assert!(m <= 64, "index encoding needs n <= 11");
        let bits = self.raw_bits();
        (0..m).fold(0u64, |acc, k| acc << 1 | (bits[k / 64] >> (k % 64) & 1))
    }

    /// Adjacency-matrix text: order on the first line, then `n` rows of `0`/`1`.
    pub fn to_text(&self) -> String {
        let n = self.n;
        let mut out = String::with_capacity(n * (n + 1) + 8);
        out.push_str(&n.to_string());
        out.push('\n');
        for u in 0..n {
            for v in 0..n {
                out.push(if self.arc(u, v) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Tournament, TournamentError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let first = lines.next().ok_or_else(|| TournamentError::Parse("empty input".into()))?;
        let n: usize = first
            .parse()
            .map_err(|_| TournamentError::Parse(format!("line 1: expected order, got {first:?}")))?;
        if n == 0 || n > MAX_ORDER {
            return Err(TournamentError::Order(n));
        }
        let mut rows: Vec<Vec<bool>> = Vec::with_capacity(n);
        for (r, line) in lines.enumerate() {
            if r >= n {
                return Err(TournamentError::Parse(format!("more than {n} matrix rows")));
            }
            let row: Vec<bool> = line
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(TournamentError::Parse(format!("row {r}: unexpected character {c:?}"))),
                })
                .collect::<Result<_, _>>()?;
            if row.len() != n {
                return Err(TournamentError::Parse(format!("row {r}: expected {n} entries, got {}", row.len())));
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(TournamentError::Parse(format!("expected {n} matrix rows, got {}", rows.len())));
        }
        for (u, row) in rows.iter().enumerate() {
            if row[u] {
                return Err(TournamentError::Loop(u));
            }
            for v in u + 1..n {
                match (row[v], rows[v][u]) {
                    (true, true) => return Err(TournamentError::DuplicatePair(u, v)),
                    (false, false) => return Err(TournamentError::MissingPair(u, v)),
                    _ => {}
                }
            }
        }
        Ok(Tournament::from_fn(n, |u, v| rows[u][v]))
    }

    /// Accepts either a compact code or the matrix text format.
    pub fn parse_any(input: &str) -> Result<Tournament, TournamentError> {
        if input.trim_start().starts_with("T:") {
            Tournament::from_code(input)
        } else {
            Tournament::from_text(input)
        }
    }
}
