//! Experiment configuration, data loading and run control.

mod analyze;
mod config;
mod run;
mod segments;
mod store;

pub use analyze::{analyze_qe, analyze_translation, TranslationAnalysis};
pub use config::{
    BackendKind, BucketConfig, ExperimentConfig, PathsConfig, ProfileConfig, Sampling,
};
pub use run::{
    prepare_prompts, rescore_translation, run_qe_experiment, run_translation_experiment,
    PreparedPrompts, RunSummary, Services,
};
pub use segments::{load_segments, load_system_outputs, read_jsonl, Segment, SegmentSet, SystemOutput};
pub use store::{existing_keys, read_records, ErrorRecord, RecordStore};
