//! Oriented Hamiltonian paths in tournaments: tournament and pattern types,
//! an exact search oracle, and a constructive embedder.

pub mod embed;
pub mod error;
pub mod oracle;
pub mod pattern;
pub mod tournament;

pub use embed::{
    choose_variant, validate, EmbedOutcome, Embedder, Embedding, ExceptionReport, MethodTag, Outcome, Step,
    VariantChoice, VariantTag, DEFAULT_N0,
};
pub use error::{EmbedError, PatternError, TournamentError};
pub use oracle::{count_embeddings, count_with_origin, oracle_embed, BaseSolver, OriginConstraint, Prepared};
pub use pattern::{Dir, PathPattern, Shape};
pub use tournament::{
    automorphism_count, canonical_form, classify_small, deletion_critical, deletion_partner, is_grunbaum, isomorphism, CanonicalForm, ExceptionClass, ExceptionKind,
    StrongDecomposition, Tournament,
};
