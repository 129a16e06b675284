use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::reference::{acceptance_band, reference_row, reference_rows, GF_MODEL};
use super::runner::{FoldResult, GfConfig};
use crate::error::{Error, Result};

/// Fold accuracies in percent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub min: f64,
    pub mean: f64,
    pub max: f64,
}

impl Summary {
    pub fn from_folds(folds: &[FoldResult]) -> Self {
        let pct: Vec<f64> = folds.iter().map(|f| 100.0 * f.accuracy).collect();
        Self {
            min: pct.iter().copied().fold(f64::INFINITY, f64::min),
            mean: pct.iter().sum::<f64>() / pct.len() as f64,
            max: pct.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

/// Measured minus published, in percentage points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDelta {
    pub model: String,
    pub reference_min: f64,
    pub reference_mean: f64,
    pub reference_max: f64,
    pub delta_min: f64,
    pub delta_mean: f64,
    pub delta_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub dataset: String,
    pub deltas: Vec<ModelDelta>,
    /// Minimum acceptable measured mean accuracy (percent).
    pub band_min_mean: f64,
    pub pass: bool,
}

impl Comparison {
    pub fn gf_delta(&self) -> &ModelDelta {
        self.deltas
            .iter()
            .find(|d| d.model == GF_MODEL)
            .expect("reference table always has a GF row")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkReport {
    pub dataset: String,
    pub dataset_name: String,
    pub config: GfConfig,
    pub folds: Vec<FoldResult>,
    pub summary: Summary,
    pub mean_train_seconds: f64,
    pub comparison: Option<Comparison>,
}

impl BenchmarkReport {
    pub fn passes(&self) -> bool {
        self.comparison.as_ref().is_some_and(|c| c.pass)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Compare a measured summary against every published row for the dataset.
pub fn compare_summary(dataset: &str, summary: &Summary) -> Result<Comparison> {
    let band = acceptance_band(dataset)?;
    let deltas = reference_rows(dataset)?
        .into_iter()
        .map(|r| ModelDelta {
            model: r.model.to_string(),
            reference_min: r.min,
            reference_mean: r.mean,
            reference_max: r.max,
            delta_min: summary.min - r.min,
            delta_mean: summary.mean - r.mean,
            delta_max: summary.max - r.max,
        })
        .collect();
    Ok(Comparison {
        dataset: dataset.to_string(),
        deltas,
        band_min_mean: band,
        pass: summary.mean >= band,
    })
}

pub fn compare_reference(report: &BenchmarkReport) -> Result<Comparison> {
    compare_summary(&report.dataset, &report.summary)
}

pub fn report_file_name(dataset: &str) -> String {
    format!("{dataset}_report.json")
}

pub const MARKDOWN_FILE_NAME: &str = "benchmark.md";

/// Published table layout with a measured GF row appended to each dataset.
pub fn render_markdown(reports: &[BenchmarkReport]) -> Result<String> {
    let mut out = String::from("# Benchmark results\n");
    for report in reports {
        let _ = writeln!(out, "\n## {}\n", report.dataset_name);
        let c = &report.config;
        let _ = writeln!(
            out,
            "Config: {} MFs per input, {} rules, {} epochs, lr {}, seed {}, {}-fold.\n",
            c.mfs_per_input, c.num_rules, c.epochs, c.lr, c.seed, c.folds
        );
        out.push_str("| Model | Min | Mean | Max | Mean train s |\n");
        out.push_str("|---|---:|---:|---:|---:|\n");
        for r in reference_rows(&report.dataset)? {
            let _ = writeln!(
                out,
                "| {} | {:.3} | {:.3} | {:.3} | - |",
                r.model, r.min, r.mean, r.max
            );
        }
        let s = &report.summary;
        let _ = writeln!(
            out,
            "| GF (measured) | {:.3} | {:.3} | {:.3} | {:.3} |",
            s.min, s.mean, s.max, report.mean_train_seconds
        );
        if let Some(cmp) = &report.comparison {
            let gf = cmp.gf_delta();
            let _ = writeln!(
                out,
                "\nDelta vs published GF (pp): min {:+.3}, mean {:+.3}, max {:+.3}. Band: mean >= {:.1} -> {}.",
                gf.delta_min,
                gf.delta_mean,
                gf.delta_max,
                cmp.band_min_mean,
                if cmp.pass { "PASS" } else { "FAIL" }
            );
        }
    }
    Ok(out)
}

/// Write `<dataset>_report.json` for each report and `benchmark.md`.
pub fn emit_report(reports: &[BenchmarkReport], dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    for report in reports {
        let path = dir.join(report_file_name(&report.dataset));
        fs::write(&path, report.to_json()?).map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    let md = dir.join(MARKDOWN_FILE_NAME);
    fs::write(&md, render_markdown(reports)?).map_err(|e| Error::io(&md, e))?;
    written.push(md);
    Ok(written)
}

/// Published GF row for a dataset as a [`Summary`].
pub fn reference_summary(dataset: &str) -> Result<Summary> {
    let r = reference_row(dataset, GF_MODEL)?;
    Ok(Summary {
        min: r.min,
        mean: r.mean,
        max: r.max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fold(i: usize, correct: usize, total: usize) -> FoldResult {
        FoldResult {
            fold: i,
            accuracy: correct as f64 / total as f64,
            correct,
            total,
            train_seconds: 0.5,
            epochs: 250,
            final_loss: 0.1,
        }
    }

    fn report(dataset: &str, folds: Vec<FoldResult>) -> BenchmarkReport {
        let summary = Summary::from_folds(&folds);
        let mut r = BenchmarkReport {
            dataset: dataset.into(),
            dataset_name: dataset.to_uppercase(),
            config: GfConfig {
                mfs_per_input: 13,
                num_rules: 300,
                epochs: 250,
                lr: 0.01,
                seed: 42,
                folds: folds.len(),
            },
            folds,
            summary,
            mean_train_seconds: 0.5,
            comparison: None,
        };
        r.comparison = Some(compare_reference(&r).unwrap());
        r
    }

    #[test]
    fn summary_aggregation() {
        let folds = vec![fold(0, 43, 48), fold(1, 40, 48), fold(2, 48, 48)];
        let s = Summary::from_folds(&folds);
        assert!((folds[0].accuracy - 0.895833).abs() < 1e-6);
        assert_eq!(s.min, 100.0 * (40.0 / 48.0));
        assert_eq!(s.max, 100.0);
        let mean = (100.0 * 43.0 / 48.0 + 100.0 * 40.0 / 48.0 + 100.0) / 3.0;
        assert!((s.mean - mean).abs() < 1e-9);
        assert!(s.min <= s.mean && s.mean <= s.max);
    }

    #[test]
    fn wine_perfect_run_has_zero_delta() {
        let s = Summary {
            min: 100.0,
            mean: 100.0,
            max: 100.0,
        };
        let c = compare_summary("wine", &s).unwrap();
        let gf = c.gf_delta();
        assert_eq!((gf.delta_min, gf.delta_mean, gf.delta_max), (0.0, 0.0, 0.0));
        assert!(c.pass);
    }

    #[test]
    fn heart_below_reference_but_inside_band() {
        let s = Summary {
            min: 75.0,
            mean: 80.0,
            max: 85.0,
        };
        let c = compare_summary("heart", &s).unwrap();
        assert!((c.gf_delta().delta_mean - (-7.619)).abs() < 1e-9);
        assert!(c.pass);
        let low = Summary { mean: 77.9, ..s };
        assert!(!compare_summary("heart", &low).unwrap().pass);
    }

    #[test]
    fn self_comparison_is_zero() {
        for dataset in ["german", "breast_cancer", "car", "heart", "wine"] {
            let c = compare_summary(dataset, &reference_summary(dataset).unwrap()).unwrap();
            let gf = c.gf_delta();
            assert_eq!((gf.delta_min, gf.delta_mean, gf.delta_max), (0.0, 0.0, 0.0));
        }
    }

    #[test]
    fn unknown_dataset() {
        let s = reference_summary("wine").unwrap();
        assert!(matches!(
            compare_summary("iris", &s),
            Err(Error::UnknownDataset(_))
        ));
    }

    #[test]
    fn json_round_trip_and_markdown_layout() {
        let reports: Vec<_> = ["german", "breast_cancer", "car", "heart", "wine"]
            .iter()
            .map(|d| report(d, vec![fold(0, 9, 10), fold(1, 7, 9)]))
            .collect();
        for r in &reports {
            assert_eq!(
                &BenchmarkReport::from_json(&r.to_json().unwrap()).unwrap(),
                r
            );
        }
        let md = render_markdown(&reports).unwrap();
        assert_eq!(md.matches("\n## ").count(), 5);
        for section in md.split("\n## ").skip(1) {
            let rows = section
                .lines()
                .filter(|l| l.starts_with("| ") && !l.starts_with("| Model"))
                .count();
            assert_eq!(rows, 7, "{section}");
            assert!(section.contains("Mean train s"));
        }

        let dir = tempfile::tempdir().unwrap();
        let written = emit_report(&reports, dir.path()).unwrap();
        assert_eq!(written.len(), 6);
        assert!(dir.path().join("wine_report.json").exists());
        assert!(dir.path().join("benchmark.md").exists());
    }
}
