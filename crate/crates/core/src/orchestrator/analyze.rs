use std::path::{Path, PathBuf};

use crate::analytics::{
    correlation_table, qe_meta_eval, write_qe_reports, write_translation_reports, CorrelationTable,
    GroupBy, HumanScores, MetaLevel, PointAggregation, QEMetaResult, QualityMetric, TableOptions,
};
use crate::error::{Error, Result};
use crate::intensity::SimilarityMeasure;
use crate::scoring::{QERecord, TranslationRecord};

use super::store::read_records;

#[derive(Debug)]
pub struct TranslationAnalysis {
    pub tables: Vec<CorrelationTable>,
    pub files: Vec<PathBuf>,
}

/// Every quality × similarity combination the records support.
fn table_options(records: &[TranslationRecord], aggregation: PointAggregation) -> Vec<TableOptions> {
    let perturbed: Vec<&TranslationRecord> = records.iter().filter(|r| r.prompt.profile.is_some()).collect();
    let has_semantic = !perturbed.is_empty() && perturbed.iter().all(|r| r.prompt.similarity_semantic.is_some());
    let has_comet = !perturbed.is_empty() && perturbed.iter().all(|r| r.comet_score.is_some());
    let mut out = Vec::new();
    for quality in [QualityMetric::Chrf, QualityMetric::Comet] {
        if quality == QualityMetric::Comet && !has_comet {
            continue;
        }
        for similarity in [SimilarityMeasure::SurfaceChrf, SimilarityMeasure::SemanticInnerProduct] {
            if similarity == SimilarityMeasure::SemanticInnerProduct && !has_semantic {
                continue;
            }
            out.push(TableOptions {
                quality,
                similarity,
                aggregation,
            });
        }
    }
    out
}

/// Read translation records and write correlation, on-target, length and
/// series reports into `out_dir`.
pub fn analyze_translation(
    records_path: &Path,
    out_dir: &Path,
    by: GroupBy,
    aggregation: PointAggregation,
) -> Result<TranslationAnalysis> {
    let records: Vec<TranslationRecord> = read_records(records_path)?;
    if records.is_empty() {
        return Err(Error::input(format!("{} holds no records", records_path.display())));
    }
    let tables = table_options(&records, aggregation)
        .into_iter()
        .map(|o| correlation_table(&records, o))
        .collect::<Result<Vec<_>>>()?;
    let files = write_translation_reports(out_dir, &records, &tables, by)?;
    Ok(TranslationAnalysis { tables, files })
}

/// Read QE records and write system- and segment-level meta-evaluation.
///
/// Human scores come from `human` when given, otherwise from the scores
/// stored on the records.
pub fn analyze_qe(
    records_path: &Path,
    human: Option<&HumanScores>,
    out_dir: &Path,
) -> Result<(Vec<QEMetaResult>, Vec<PathBuf>)> {
    let records: Vec<QERecord> = read_records(records_path)?;
    if records.is_empty() {
        return Err(Error::input(format!("{} holds no records", records_path.display())));
    }
    let stored;
    let human = match human {
        Some(h) => h,
        None => {
            let mut h = HumanScores::default();
            for r in &records {
                if let Some(s) = r.human_score {
                    h.insert(&r.system_id, &r.segment_id, s);
                }
            }
            stored = h;
            &stored
        }
    };
    let mut results = qe_meta_eval(&records, human, MetaLevel::System);
    results.extend(qe_meta_eval(&records, human, MetaLevel::Segment));
    let files = write_qe_reports(out_dir, &results)?;
    Ok((results, files))
}
