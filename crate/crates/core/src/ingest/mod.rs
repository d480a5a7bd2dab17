//! Loading O*NET-style tab-separated files and the subtask ledger into an
//! immutable [`Dataset`].

mod dataset;
mod ledger;
mod tsv;

pub use dataset::{
    load_dataset, Dataset, DatasetBuilder, DatasetPaths, DatasetSummary, Occupation, PrimitiveKind,
    SocCode, TaskCategory, TaskId, TaskStatement, WorkActivity, WorkPrimitive, REFERENCE_COUNTS,
};
pub use ledger::{load_subtask_ledger, ControlMode, SubtaskRecord, TypeTag};
