use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{compare_reference, BenchmarkReport, Summary};
use crate::data::{load_csv, minmax_fit, stratified_kfold, Dataset, DatasetSpec, Fold};
use crate::error::{Error, Result};
use crate::fuzzy::{init_classifier, predict_batch, ModelShape};
use crate::training::{train, TrainConfig};

pub const DEFAULT_FOLDS: usize = 5;
pub const DEFAULT_SEED: u64 = 42;

/// Model and optimizer settings for one benchmark run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GfConfig {
    pub mfs_per_input: usize,
    pub num_rules: usize,
    pub epochs: usize,
    pub lr: f64,
    pub seed: u64,
    pub folds: usize,
}

impl GfConfig {
    pub fn train_config(&self) -> TrainConfig {
        TrainConfig {
            max_epochs: self.epochs,
            lr: self.lr,
            seed: self.seed,
            ..TrainConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.train_config().validate()?;
        if self.mfs_per_input == 0 || self.num_rules == 0 {
            return Err(Error::Config("mfs and rules must be at least 1".into()));
        }
        if self.folds < 2 {
            return Err(Error::Config("need at least two folds".into()));
        }
        Ok(())
    }
}

/// Optional replacements for a dataset's built-in configuration.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub mfs_per_input: Option<usize>,
    pub num_rules: Option<usize>,
    pub epochs: Option<usize>,
    pub lr: Option<f64>,
    pub seed: Option<u64>,
}

impl Overrides {
    pub fn resolve(&self, spec: &DatasetSpec) -> GfConfig {
        let defaults = TrainConfig::default();
        GfConfig {
            mfs_per_input: self.mfs_per_input.unwrap_or(spec.gf.mfs_per_input),
            num_rules: self.num_rules.unwrap_or(spec.gf.num_rules),
            epochs: self.epochs.unwrap_or(defaults.max_epochs),
            lr: self.lr.unwrap_or(defaults.lr),
            seed: self.seed.unwrap_or(DEFAULT_SEED),
            folds: DEFAULT_FOLDS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldResult {
    pub fold: usize,
    /// Fraction of validation rows classified correctly.
    pub accuracy: f64,
    pub correct: usize,
    pub total: usize,
    pub train_seconds: f64,
    pub epochs: usize,
    pub final_loss: f64,
}

/// Seed of the classifier trained on fold `fold`.
pub fn fold_model_seed(seed: u64, fold: usize) -> u64 {
    seed.wrapping_add(fold as u64)
}

/// Fit the scaler on the fold's training rows, train a fresh classifier, and
/// score it on the validation rows.
pub fn run_fold(
    dataset: &Dataset,
    fold_index: usize,
    fold: &Fold,
    config: &GfConfig,
) -> Result<FoldResult> {
    config.validate()?;
    let (x_train, y_train) = dataset.select(&fold.train);
    let (x_val, y_val) = dataset.select(&fold.validation);
    if y_train.is_empty() || y_val.is_empty() {
        return Err(Error::Data(format!(
            "fold {fold_index} has an empty partition"
        )));
    }
    let d = dataset.num_features;
    let scaler = minmax_fit(&x_train, d)?;
    let x_train = scaler.transform(&x_train)?;
    let x_val = scaler.transform(&x_val)?;

    let shape = ModelShape::new(
        d,
        dataset.num_classes(),
        config.mfs_per_input,
        config.num_rules,
    );
    let model = init_classifier(shape, fold_model_seed(config.seed, fold_index))?;
    let (model, record) = train(model, &x_train, &y_train, &config.train_config())?;

    let predicted = predict_batch(&model, &x_val)?;
    let correct = predicted.iter().zip(&y_val).filter(|(p, y)| p == y).count();
    Ok(FoldResult {
        fold: fold_index,
        accuracy: correct as f64 / y_val.len() as f64,
        correct,
        total: y_val.len(),
        // Timer resolution can round very short runs to zero.
        train_seconds: record.wall_clock_seconds.max(f64::MIN_POSITIVE),
        epochs: record.epochs_run,
        final_loss: record.final_loss(),
    })
}

/// All folds of one dataset, in parallel, collected in fold order.
pub fn run_benchmark_on(
    dataset: &Dataset,
    spec: &DatasetSpec,
    config: &GfConfig,
) -> Result<BenchmarkReport> {
    config.validate()?;
    let plan = stratified_kfold(&dataset.y, config.folds, config.seed)?;
    let mut folds = plan
        .folds
        .par_iter()
        .enumerate()
        .map(|(i, fold)| run_fold(dataset, i, fold, config))
        .collect::<Result<Vec<_>>>()?;
    folds.sort_by_key(|f| f.fold);

    let summary = Summary::from_folds(&folds);
    let mean_train_seconds =
        folds.iter().map(|f| f.train_seconds).sum::<f64>() / folds.len() as f64;
    let mut report = BenchmarkReport {
        dataset: spec.key.clone(),
        dataset_name: spec.name.clone(),
        config: config.clone(),
        folds,
        summary,
        mean_train_seconds,
        comparison: None,
    };
    report.comparison = Some(compare_reference(&report)?);
    Ok(report)
}

pub fn run_benchmark(
    spec: &DatasetSpec,
    data_dir: impl AsRef<Path>,
    overrides: &Overrides,
) -> Result<BenchmarkReport> {
    let config = overrides.resolve(spec);
    config.validate()?;
    let dataset = load_csv(spec, data_dir)?;
    run_benchmark_on(&dataset, spec, &config)
}
