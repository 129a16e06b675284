//! Dataset specs, CSV ingestion, min-max scaling, stratified folds and fetching.

mod fetch;
mod folds;
mod load;
mod scaler;
mod spec;

use std::path::PathBuf;

pub use fetch::{fetch_dataset, FetchSource, FetchStatus, FETCH_BASE_ENV, UCI_BASE_URL};
pub use folds::{stratified_kfold, Fold, FoldPlan};
pub use load::{dataset_to_csv, load_csv, parse_dataset, write_dataset_csv, Dataset};
pub use scaler::{minmax_apply, minmax_fit, MinMaxScaler};
pub use spec::{
    breast_cancer, builtin_keys, builtin_spec, builtin_specs, car_evaluation, german_credit,
    heart_disease, heart_target_binarize, wine, ColumnKind, ColumnSpec, DatasetSpec, Delimiter,
    GfHyperparams, TargetMapping,
};

/// Environment variable for the data directory.
pub const DATA_DIR_ENV: &str = "GRADFUZZ_DATA_DIR";

/// `$GRADFUZZ_DATA_DIR`, falling back to `./data`.
pub fn default_data_dir() -> PathBuf {
    std::env::var_os(DATA_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("data"))
}
