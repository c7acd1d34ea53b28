//! Correlation tables, on-target rates, length statistics and QE
//! meta-evaluation over scored records.

mod groups;
mod qe;
mod report;
mod stats;
mod table;

pub use groups::{length_stats, on_target_rate, GroupBy, GroupKey, LengthStats, OnTargetRate};
pub use qe::{qe_meta_eval, BucketCorrelation, HumanScores, MetaLevel, QEMetaResult};
pub use report::{
    bucket_series, format_r, render_grid, write_qe_reports, write_translation_reports, SeriesPoint,
    UNDEFINED,
};
pub use stats::{pearson, spearman};
pub use table::{
    correlation_table, CorrelationCell, CorrelationPoint, CorrelationTable, PointAggregation,
    QualityMetric, TableOptions, ALL_PROFILES, ALL_PROMPTS,
};
