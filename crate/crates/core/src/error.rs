use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("model integrity violated: {0}")]
    ModelIntegrity(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    /// A non-finite value was handed to an operation that needs real numbers.
    #[error("non-finite input: {0}")]
    NonFiniteInput(String),

    /// A non-finite intermediate showed up during gradient computation or training.
    #[error("numeric failure at {location}: {detail}")]
    Numeric { location: String, detail: String },

    #[error("training diverged at epoch {epoch}: loss = {loss}")]
    Diverged { epoch: usize, loss: f64 },

    #[error("data error: {0}")]
    Data(String),

    #[error("data file {path} not found; run `gradfuzz fetch --dataset {dataset}` first")]
    MissingDataFile { path: PathBuf, dataset: String },

    #[error("{dataset}: expected {expected} rows, found {found}")]
    RowCount {
        dataset: String,
        expected: usize,
        found: usize,
    },

    #[error("fetch failed for {url}: {detail}")]
    Fetch { url: String, detail: String },

    #[error("unknown dataset `{0}`")]
    UnknownDataset(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by the input data (missing files, bad rows, label problems).
    pub fn is_data_error(&self) -> bool {
        matches!(
            self,
            Error::Data(_)
                | Error::MissingDataFile { .. }
                | Error::RowCount { .. }
                | Error::Fetch { .. }
                | Error::NonFiniteInput(_)
                | Error::Io { .. }
        )
    }
}
