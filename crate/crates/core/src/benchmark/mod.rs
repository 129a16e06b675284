//! Stratified k-fold evaluation of the classifier and comparison against
//! published accuracies.

mod reference;
mod report;
mod runner;

pub use reference::{
    acceptance_band, reference_row, reference_rows, ReferenceRow, ACCEPTANCE_BANDS, GF_MODEL,
    REFERENCE_MODELS, REFERENCE_TABLE,
};
pub use report::{
    compare_reference, compare_summary, emit_report, reference_summary, render_markdown,
    report_file_name, BenchmarkReport, Comparison, ModelDelta, Summary, MARKDOWN_FILE_NAME,
};
pub use runner::{
    fold_model_seed, run_benchmark, run_benchmark_on, run_fold, FoldResult, GfConfig, Overrides,
    DEFAULT_FOLDS, DEFAULT_SEED,
};
