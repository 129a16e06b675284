//! Gradient-optimized fuzzy inference classifier.
//!
//! A zero-order Takagi-Sugeno-Kang rule base over Gaussian membership
//! functions, trained end-to-end with ADAM on cross-entropy, plus the data
//! preparation, cross-validation benchmark and rule-explanation tooling
//! around it.

pub mod benchmark;
pub mod data;
pub mod error;
pub mod explain;
pub mod fuzzy;
pub mod training;

pub use benchmark::{run_benchmark, BenchmarkReport, Overrides};
pub use data::{builtin_spec, load_csv, stratified_kfold, Dataset, DatasetSpec};
pub use error::{Error, Result};
pub use explain::{export_rules, trace, LinguisticVocabulary, PredictionTrace};
pub use fuzzy::{forward, init_classifier, predict, FuzzyClassifier, ModelShape};
pub use training::{train, TrainConfig, TrainRecord};
