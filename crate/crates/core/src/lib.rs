//! Work fingerprints and the g+ score over O*NET-style occupational data.
//!
//! A fingerprint is a vector of levels in `[0, 7]`, one per work primitive
//! (skills, abilities, knowledge). A subtask fingerprint holds the minimum
//! levels a subtask requires; a work fingerprint holds the levels a worker
//! has demonstrated, taken as the componentwise max over the subtasks they
//! performed. g+ is the level-sum scaled so the average occupation scores
//! 100.

pub mod bounds;
pub mod error;
pub mod exec;
pub mod fingerprint;
pub mod ingest;
pub mod label;
pub mod portfolio;
pub mod report;
pub mod synthetic;

pub use error::{Error, Result};
pub use exec::Execution;
pub use fingerprint::{
    derive_norm_constant, gplus, merge, performable, Comparison, Fingerprint, GPlusConfig,
    NormMode, ShortfallReport,
};
pub use label::{ContentModelLabel, LabelLevel};
