use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::groups::{group, length_stats, on_target_rate, GroupBy, GroupKey};
use super::qe::QEMetaResult;
use super::stats::stable_mean;
use super::table::{similarity_of, CorrelationTable};
use crate::error::Result;
use crate::intensity::SimilarityMeasure;
use crate::scoring::TranslationRecord;

/// Placeholder for a correlation that is undefined.
pub const UNDEFINED: &str = "—";

pub fn format_r(r: Option<f64>) -> String {
    r.map_or_else(|| UNDEFINED.to_string(), |v| v.to_string())
}

/// One point of a quality-vs-similarity curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub model_id: String,
    pub lang_pair: String,
    pub base_prompt_id: String,
    /// `None` for the unperturbed base prompt.
    pub bucket: Option<usize>,
    pub n: usize,
    pub similarity: f64,
    pub chrf: f64,
    pub comet: Option<f64>,
    pub on_target_rate: f64,
}

/// Per-bucket means for each model, language pair and base prompt.
pub fn bucket_series(records: &[TranslationRecord], measure: SimilarityMeasure) -> Vec<SeriesPoint> {
    let by = GroupBy {
        model: true,
        lang_pair: true,
        bucket: true,
        profile: false,
        prompt: true,
    };
    group(records, by)
        .into_iter()
        .filter_map(|(key, rs)| {
            let mut sims: Vec<f64> = rs.iter().filter_map(|r| similarity_of(r, measure)).collect();
            if sims.is_empty() {
                return None;
            }
            let mut chrf: Vec<f64> = rs.iter().map(|r| r.chrf_score).collect();
            let mut comet: Vec<f64> = rs.iter().filter_map(|r| r.comet_score).collect();
            let comet = (comet.len() == rs.len()).then(|| stable_mean(&mut comet));
            Some(SeriesPoint {
                model_id: key.model_id.unwrap_or_default(),
                lang_pair: key.lang_pair.unwrap_or_default(),
                base_prompt_id: key.base_prompt_id.unwrap_or_default(),
                bucket: key.bucket.flatten(),
                n: rs.len(),
                similarity: stable_mean(&mut sims),
                chrf: stable_mean(&mut chrf),
                comet,
                on_target_rate: rs.iter().filter(|r| r.on_target).count() as f64 / rs.len() as f64,
            })
        })
        .collect()
}

/// Plain-text rendering of the correlation grid.
pub fn render_grid(table: &CorrelationTable) -> String {
    let cols = table.column_labels();
    let rows = table.row_labels();
    let width = rows.iter().map(|r| r.chars().count()).max().unwrap_or(0);
    let col_w: Vec<usize> = cols.iter().map(|c| c.chars().count().max(6)).collect();
    let mut out = format!("{:width$}", "");
    for (c, w) in cols.iter().zip(&col_w) {
        out.push_str(&format!("  {c:>w$}"));
    }
    out.push('\n');
    for row in rows {
        out.push_str(&format!("{row:width$}"));
        for (col, w) in cols.iter().zip(&col_w) {
            let text = table
                .cell(row, col)
                .and_then(|c| c.r)
                .map_or_else(|| UNDEFINED.to_string(), |r| format!("{r:.2}"));
            out.push_str(&format!("  {text:>w$}"));
        }
        out.push('\n');
    }
    out
}

fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

fn write_correlations(dir: &Path, stem: &str, table: &CorrelationTable) -> Result<Vec<PathBuf>> {
    let csv_path = dir.join(format!("{stem}.csv"));
    let mut w = csv::Writer::from_path(&csv_path)?;
    w.write_record(["profile", "prompt", "n", "r"])?;
    for row in table.row_labels() {
        for col in table.column_labels() {
            let (n, r) = table.cell(row, col).map_or((0, None), |c| (c.n_points, c.r));
            w.write_record([row, col, &n.to_string(), &format_r(r)])?;
        }
    }
    w.flush()?;
    let json_path = dir.join(format!("{stem}.json"));
    write_json(&json_path, table)?;
    Ok(vec![csv_path, json_path])
}

fn group_header(extra: &[&str]) -> Vec<String> {
    GroupKey::COLUMN_NAMES
        .iter()
        .chain(extra)
        .map(|s| s.to_string())
        .collect()
}

/// Write every translation report into `dir`; returns the files written.
pub fn write_translation_reports(
    dir: &Path,
    records: &[TranslationRecord],
    tables: &[CorrelationTable],
    by: GroupBy,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for table in tables {
        let stem = format!(
            "correlations_{}_{}",
            table.options.quality, table.options.similarity
        );
        written.extend(write_correlations(dir, &stem, table)?);
    }

    let rates = on_target_rate(records, by);
    let path = dir.join("on_target.csv");
    let mut w = csv::Writer::from_path(&path)?;
    w.write_record(group_header(&["n", "on_target", "rate"]))?;
    for r in &rates {
        let mut row = r.group.columns().to_vec();
        row.extend([r.n.to_string(), r.on_target.to_string(), r.rate.to_string()]);
        w.write_record(row)?;
    }
    w.flush()?;
    written.push(path);

    let lengths = length_stats(records, by);
    let path = dir.join("lengths.csv");
    let mut w = csv::Writer::from_path(&path)?;
    w.write_record(group_header(&["n", "mean_output_len", "mean_reference_len", "ratio"]))?;
    for l in &lengths {
        let mut row = l.group.columns().to_vec();
        row.extend([
            l.n.to_string(),
            l.mean_output_len.to_string(),
            l.mean_reference_len.to_string(),
            l.ratio.to_string(),
        ]);
        w.write_record(row)?;
    }
    w.flush()?;
    written.push(path);

    for measure in [SimilarityMeasure::SurfaceChrf, SimilarityMeasure::SemanticInnerProduct] {
        let series = bucket_series(records, measure);
        if series.is_empty() {
            continue;
        }
        let path = dir.join(format!("series_{measure}.csv"));
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record([
            "model_id",
            "lang_pair",
            "base_prompt_id",
            "bucket",
            "n",
            "similarity",
            "chrf",
            "comet",
            "on_target_rate",
        ])?;
        for s in &series {
            w.write_record([
                s.model_id.clone(),
                s.lang_pair.clone(),
                s.base_prompt_id.clone(),
                s.bucket.map_or("base".to_string(), |b| b.to_string()),
                s.n.to_string(),
                s.similarity.to_string(),
                s.chrf.to_string(),
                s.comet.map(|c| c.to_string()).unwrap_or_default(),
                s.on_target_rate.to_string(),
            ])?;
        }
        w.flush()?;
        written.push(path);
    }
    Ok(written)
}

/// Write QE meta-evaluation results as CSV and JSON.
pub fn write_qe_reports(dir: &Path, results: &[QEMetaResult]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let path = dir.join("qe_meta.csv");
    let mut w = csv::Writer::from_path(&path)?;
    w.write_record(["level", "qe_prompt_id", "bucket", "n", "r"])?;
    for res in results {
        let level = serde_json::to_value(res.level)?;
        let level = level.as_str().unwrap_or_default().to_string();
        for b in &res.per_bucket {
            w.write_record([
                level.clone(),
                res.qe_prompt_id.clone(),
                b.bucket.map_or("base".to_string(), |x| x.to_string()),
                b.n.to_string(),
                format_r(b.r),
            ])?;
        }
        w.write_record([level, res.qe_prompt_id.clone(), "all".into(), res.n.to_string(), format_r(res.r)])?;
    }
    w.flush()?;
    let json = dir.join("qe_meta.json");
    write_json(&json, results)?;
    Ok(vec![path, json])
}
