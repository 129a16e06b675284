//! Published min/mean/max 5-fold accuracies (percent) for the GF classifier
//! and five baseline models on each dataset.

use crate::error::{Error, Result};

pub const GF_MODEL: &str = "GF";

pub const REFERENCE_MODELS: [&str; 6] = [
    GF_MODEL,
    "Xgboost Classification",
    "Support Vector Classification",
    "Random Forest Classification",
    "Neural Network Classification",
    "Logistic Regression",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceRow {
    pub dataset: &'static str,
    pub model: &'static str,
    pub min: f64,
    pub mean: f64,
    pub max: f64,
}

const fn row(
    dataset: &'static str,
    model: &'static str,
    min: f64,
    mean: f64,
    max: f64,
) -> ReferenceRow {
    ReferenceRow {
        dataset,
        model,
        min,
        mean,
        max,
    }
}

pub const REFERENCE_TABLE: [ReferenceRow; 30] = [
    row("german", "GF", 78.125, 80.625, 83.125),
    row("german", "Xgboost Classification", 69.200, 74.800, 80.000),
    row(
        "german",
        "Support Vector Classification",
        64.800,
        70.400,
        76.000,
    ),
    row(
        "german",
        "Random Forest Classification",
        72.800,
        78.000,
        83.200,
    ),
    row(
        "german",
        "Neural Network Classification",
        58.400,
        64.400,
        70.400,
    ),
    row("german", "Logistic Regression", 70.000, 75.600, 80.800),
    row("breast_cancer", "GF", 96.703, 98.901, 100.000),
    row(
        "breast_cancer",
        "Xgboost Classification",
        94.406,
        97.203,
        99.301,
    ),
    row(
        "breast_cancer",
        "Support Vector Classification",
        90.210,
        94.406,
        97.902,
    ),
    row(
        "breast_cancer",
        "Random Forest Classification",
        95.105,
        97.902,
        100.000,
    ),
    row(
        "breast_cancer",
        "Neural Network Classification",
        87.413,
        92.308,
        96.503,
    ),
    row(
        "breast_cancer",
        "Logistic Regression",
        92.308,
        95.804,
        98.601,
    ),
    row("car", "GF", 94.565, 95.296, 96.029),
    row("car", "Xgboost Classification", 97.685, 98.843, 99.769),
    row(
        "car",
        "Support Vector Classification",
        94.444,
        96.296,
        97.917,
    ),
    row(
        "car",
        "Random Forest Classification",
        90.278,
        92.824,
        95.139,
    ),
    row(
        "car",
        "Neural Network Classification",
        96.991,
        98.380,
        99.306,
    ),
    row("car", "Logistic Regression", 87.500, 90.278, 93.056),
    row("heart", "GF", 83.673, 87.619, 89.583),
    row("heart", "Xgboost Classification", 72.368, 81.579, 89.474),
    row(
        "heart",
        "Support Vector Classification",
        55.263,
        65.789,
        76.316,
    ),
    row(
        "heart",
        "Random Forest Classification",
        71.053,
        80.263,
        88.158,
    ),
    row(
        "heart",
        "Neural Network Classification",
        69.737,
        78.947,
        88.158,
    ),
    row("heart", "Logistic Regression", 72.368, 81.579, 89.474),
    row("wine", "GF", 100.000, 100.000, 100.000),
    row("wine", "Xgboost Classification", 93.333, 97.778, 100.000),
    row(
        "wine",
        "Support Vector Classification",
        68.889,
        80.000,
        91.111,
    ),
    row(
        "wine",
        "Random Forest Classification",
        100.000,
        100.000,
        100.000,
    ),
    row(
        "wine",
        "Neural Network Classification",
        93.333,
        97.778,
        100.000,
    ),
    row("wine", "Logistic Regression", 86.667, 93.333, 100.000),
];

/// Minimum acceptable measured 5-fold mean accuracy (percent) per dataset.
pub const ACCEPTANCE_BANDS: [(&str, f64); 5] = [
    ("german", 72.0),
    ("breast_cancer", 94.0),
    ("car", 88.0),
    ("heart", 78.0),
    ("wine", 97.0),
];

pub fn reference_rows(dataset: &str) -> Result<Vec<ReferenceRow>> {
    let rows: Vec<_> = REFERENCE_TABLE
        .iter()
        .filter(|r| r.dataset == dataset)
        .copied()
        .collect();
    if rows.is_empty() {
        return Err(Error::UnknownDataset(dataset.into()));
    }
    Ok(rows)
}

pub fn reference_row(dataset: &str, model: &str) -> Result<ReferenceRow> {
    reference_rows(dataset)?
        .into_iter()
        .find(|r| r.model == model)
        .ok_or_else(|| Error::UnknownDataset(format!("{dataset}/{model}")))
}

pub fn acceptance_band(dataset: &str) -> Result<f64> {
    ACCEPTANCE_BANDS
        .iter()
        .find(|(d, _)| *d == dataset)
        .map(|&(_, t)| t)
        .ok_or_else(|| Error::UnknownDataset(dataset.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_checks() {
        assert_eq!(reference_row("wine", GF_MODEL).unwrap().mean, 100.000);
        assert_eq!(
            reference_row("breast_cancer", GF_MODEL).unwrap().mean,
            98.901
        );
        assert_eq!(reference_row("car", GF_MODEL).unwrap().max, 96.029);
        assert_eq!(reference_row("heart", GF_MODEL).unwrap().min, 83.673);
        let german = reference_row("german", GF_MODEL).unwrap();
        assert_eq!(
            (german.min, german.mean, german.max),
            (78.125, 80.625, 83.125)
        );
        assert_eq!(
            reference_row("wine", "Logistic Regression").unwrap().mean,
            93.333
        );
    }

    #[test]
    fn table_is_complete_and_ordered() {
        for (dataset, _) in ACCEPTANCE_BANDS {
            let rows = reference_rows(dataset).unwrap();
            let models: Vec<&str> = rows.iter().map(|r| r.model).collect();
            assert_eq!(models, REFERENCE_MODELS);
            for r in rows {
                assert!(r.min <= r.mean && r.mean <= r.max, "{r:?}");
            }
        }
        assert!(reference_rows("iris").is_err());
    }

    #[test]
    fn gf_reference_values_sit_inside_their_bands() {
        for (dataset, band) in ACCEPTANCE_BANDS {
            assert!(reference_row(dataset, GF_MODEL).unwrap().mean >= band);
        }
    }
}
