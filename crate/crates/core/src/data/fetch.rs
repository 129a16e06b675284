//! Download of the raw UCI files.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use super::load::parse_dataset;
use super::spec::DatasetSpec;
use crate::error::{Error, Result};

pub const UCI_BASE_URL: &str = "https://archive.ics.uci.edu/ml/machine-learning-databases";

/// Environment variable naming an alternative base URL (`http(s)://` or `file://`).
pub const FETCH_BASE_ENV: &str = "GRADFUZZ_FETCH_BASE";

static WRITE_LOCK: Mutex<()> = Mutex::new(());

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FetchSource {
    /// The canonical UCI archive layout.
    Uci,
    /// A flat mirror: `<base>/<file_name>`.
    Mirror(String),
}

impl FetchSource {
    pub fn from_env() -> Self {
        match std::env::var(FETCH_BASE_ENV) {
            Ok(base) if !base.trim().is_empty() => FetchSource::Mirror(base),
            _ => FetchSource::Uci,
        }
    }

    pub fn url_for(&self, spec: &DatasetSpec) -> String {
        match self {
            FetchSource::Uci => format!("{UCI_BASE_URL}/{}", spec.source_path),
            FetchSource::Mirror(base) => {
                format!("{}/{}", base.trim_end_matches('/'), spec.file_name)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FetchStatus {
    AlreadyPresent(PathBuf),
    Downloaded(PathBuf),
}

fn read_url(url: &str) -> Result<Vec<u8>> {
    if let Some(path) = url.strip_prefix("file://") {
        return fs::read(path).map_err(|e| Error::Fetch {
            url: url.into(),
            detail: e.to_string(),
        });
    }
    let fail = |detail: String| Error::Fetch {
        url: url.into(),
        detail,
    };
    let response = ureq::get(url).call().map_err(|e| fail(e.to_string()))?;
    response
        .into_body()
        .read_to_vec()
        .map_err(|e| fail(e.to_string()))
}

/// Ensure `spec.file_name` exists in `dest` and parses to the expected row count.
///
/// An existing file is verified and never re-downloaded. A download is
/// verified before it replaces anything on disk.
pub fn fetch_dataset(
    spec: &DatasetSpec,
    dest: impl AsRef<Path>,
    source: &FetchSource,
) -> Result<FetchStatus> {
    let dest = dest.as_ref();
    let target = dest.join(&spec.file_name);
    if target.exists() {
        let text = fs::read_to_string(&target).map_err(|e| Error::io(&target, e))?;
        parse_dataset(spec, &text)?;
        return Ok(FetchStatus::AlreadyPresent(target));
    }

    let url = source.url_for(spec);
    let bytes = read_url(&url)?;
    let text = String::from_utf8(bytes).map_err(|_| Error::Fetch {
        url: url.clone(),
        detail: "response is not UTF-8 text".into(),
    })?;
    parse_dataset(spec, &text)?;

    fs::create_dir_all(dest).map_err(|e| Error::io(dest, e))?;
    let _guard = WRITE_LOCK.lock().unwrap_or_else(|p| p.into_inner());
    if target.exists() {
        return Ok(FetchStatus::AlreadyPresent(target));
    }
    let partial = dest.join(format!(".{}.partial", spec.file_name));
    fs::write(&partial, text).map_err(|e| Error::io(&partial, e))?;
    fs::rename(&partial, &target).map_err(|e| Error::io(&target, e))?;
    Ok(FetchStatus::Downloaded(target))
}
