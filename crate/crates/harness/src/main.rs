use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tourpath::{gen_random, mix, report, sweep, HarnessError, Model, SweepConfig, VerificationRecord};
use tourpath_core::{
    canonical_form, classify_small, oracle_embed, Embedder, ExceptionKind, OriginConstraint, Outcome, PathPattern,
    Tournament, DEFAULT_N0,
};

#[derive(Parser)]
#[command(name = "tourpath", version, about = "Oriented Hamiltonian paths in tournaments")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Embed a pattern constructively; exit 0 on a witness, 1 on an exception.
    Embed {
        /// Matrix file or compact code `T:<n>:<hex>`.
        tournament: String,
        /// Sign string, `F`/`B` string or block form; may start with `-`.
        #[arg(allow_hyphen_values = true)]
        pattern: String,
        /// Base threshold for exact solving.
        #[arg(long, default_value_t = DEFAULT_N0)]
        n0: usize,
    },
    /// Exact search; same interface as `embed`.
    Oracle {
        tournament: String,
        #[arg(allow_hyphen_values = true)]
        pattern: String,
    },
    /// Print random tournaments as compact codes, one per line.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `uniform` or `near_regular`.
        #[arg(long, default_value = "uniform")]
        model: String,
        /// Random pair flips for `near_regular`.
        #[arg(long, default_value_t = 0)]
        flips: usize,
    },
    /// Run a sweep described by a key = value config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Also write the summary as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Re-validate stored records and summarize them.
    Report {
        records: PathBuf,
        /// Print CSV instead of text.
        #[arg(long)]
        csv: bool,
        #[arg(long, default_value_t = DEFAULT_N0)]
        n0: usize,
    },
    /// Print the canonical codes of T3, T4+, T5 and T7.
    Exceptions {
        #[arg(long)]
        n: Option<usize>,
    },
}

enum Failure {
    /// Instance is an exception (or has no copy).
    Absent,
    Input(String),
    Run(String),
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Io(_) | HarnessError::Verification { .. } => Failure::Run(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn load_tournament(arg: &str) -> Result<Tournament, Failure> {
    let text = if arg.trim_start().starts_with("T:") {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::Input(format!("{arg}: {e}")))?
    };
    Tournament::parse_any(&text).map_err(|e| Failure::Input(e.to_string()))
}

fn load_instance(t: &str, p: &str) -> Result<(Tournament, PathPattern), Failure> {
    let t = load_tournament(t)?;
    let p: PathPattern = p.parse().map_err(|e: tourpath_core::PatternError| Failure::Input(e.to_string()))?;
    if t.order() != p.order() {
        return Err(Failure::Input(format!("tournament has {} vertices, pattern {}", t.order(), p.order())));
    }
    Ok((t, p))
}

fn join(seq: &[usize]) -> String {
    seq.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    let io = |e: std::io::Error| Failure::Run(e.to_string());
    match cli.cmd {
        Cmd::Embed { tournament, pattern, n0 } => {
            let (t, p) = load_instance(&tournament, &pattern)?;
            let outcome = Embedder::new(n0).embed(&t, &p).map_err(|e| Failure::Run(e.to_string()))?;
            match &outcome.result {
                Outcome::Witness(w) => writeln!(out, "witness: {}", join(&w.seq)).map_err(io)?,
                Outcome::Exception(r) => {
                    writeln!(out, "exception: {} (iso {})", r.class.kind, join(&r.class.iso)).map_err(io)?
                }
            }
            writeln!(out, "method: {}", outcome.method).map_err(io)?;
            if outcome.exception().is_some() {
                return Err(Failure::Absent);
            }
        }
        Cmd::Oracle { tournament, pattern } => {
            let (t, p) = load_instance(&tournament, &pattern)?;
            match oracle_embed(&t, &p, &OriginConstraint::none()).map_err(|e| Failure::Input(e.to_string()))? {
                Some(seq) => writeln!(out, "witness: {}", join(&seq)).map_err(io)?,
                None => {
                    match classify_small(&t) {
                        Some(c) => writeln!(out, "exception: {} (iso {})", c.kind, join(&c.iso)).map_err(io)?,
                        None => writeln!(out, "no copy").map_err(io)?,
                    }
                    return Err(Failure::Absent);
                }
            }
        }
        Cmd::Gen { n, count, seed, model, flips } => {
            let model = match model.parse::<Model>()? {
                Model::NearRegular { .. } => Model::NearRegular { flips },
                m => m,
            };
            for i in 0..count {
                let t = gen_random(n, mix(seed, i), model)?;
                writeln!(out, "{}", t.to_code()).map_err(io)?;
            }
        }
        Cmd::Sweep { config, csv } => {
            let text = std::fs::read_to_string(&config).map_err(|e| Failure::Input(format!("{}: {e}", config.display())))?;
            let cfg = SweepConfig::parse(&text)?;
            let summary = match &cfg.output_path {
                Some(path) => {
                    let mut w = BufWriter::new(File::create(path).map_err(io)?);
                    let mut sink = |r: &VerificationRecord| -> std::io::Result<()> {
                        serde_json::to_writer(&mut w, r)?;
                        w.write_all(b"\n")
                    };
                    let s = sweep(&cfg, Some(&mut sink))?;
                    w.flush().map_err(io)?;
                    s
                }
                None => sweep(&cfg, None)?,
            };
            write!(out, "{}", summary.render()).map_err(io)?;
            if let Some(path) = csv {
                std::fs::write(path, summary.to_csv().map_err(|e| Failure::Run(e.to_string()))?).map_err(io)?;
            }
            if summary.disagreements() > 0 {
                return Err(Failure::Run("oracle disagreements".into()));
            }
        }
        Cmd::Report { records, csv, n0 } => {
            let f = File::open(&records).map_err(|e| Failure::Input(format!("{}: {e}", records.display())))?;
            let reader: Box<dyn BufRead> = Box::new(BufReader::new(f));
            let summary = report(reader, n0)?;
            if csv {
                write!(out, "{}", summary.to_csv().map_err(|e| Failure::Run(e.to_string()))?).map_err(io)?;
            } else {
                write!(out, "{}", summary.render()).map_err(io)?;
            }
        }
        Cmd::Exceptions { n } => {
            for kind in [ExceptionKind::T3, ExceptionKind::T4Plus, ExceptionKind::T5, ExceptionKind::T7] {
                if n.is_some_and(|n| n != kind.order()) {
                    continue;
                }
                let canon = canonical_form(&kind.representative()).map_err(|e| Failure::Run(e.to_string()))?;
                writeln!(out, "{kind} {}", canon.tournament().to_code()).map_err(io)?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Absent) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
