//! Generation, sweeps, verification records and reports for the embedder.

pub mod config;
mod error;
pub mod gen;
pub mod record;
pub mod report;
pub mod summary;
pub mod sweep;

pub use config::{PatternSource, SweepConfig, TournamentSource};
pub use error::HarnessError;
pub use gen::{gen_all, gen_random, iso_classes, random_pattern, Model};
pub use record::{RecordOutcome, VerificationRecord};
pub use report::report;
pub use summary::{Observation, OrderStats, Summary};
pub use sweep::{mix, sweep, thread_pool};
