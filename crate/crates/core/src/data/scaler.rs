use crate::error::{Error, Result};

/// Per-feature min/max learned from a training partition.
#[derive(Debug, Clone, PartialEq)]
pub struct MinMaxScaler {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl MinMaxScaler {
    pub fn num_features(&self) -> usize {
        self.min.len()
    }

    /// `(x - min) / (max - min)`, with constant features mapped to 0. Values
    /// outside the fitted range are left outside `[0, 1]`.
    pub fn transform(&self, x: &[f64]) -> Result<Vec<f64>> {
        let d = self.num_features();
        if !x.len().is_multiple_of(d) {
            return Err(Error::Shape(format!(
                "{} values are not rows of {d} features",
                x.len()
            )));
        }
        Ok(x.chunks_exact(d)
            .flat_map(|row| {
                row.iter().enumerate().map(|(j, &v)| {
                    let span = self.max[j] - self.min[j];
                    if span > 0.0 {
                        (v - self.min[j]) / span
                    } else {
                        0.0
                    }
                })
            })
            .collect())
    }
}

pub fn minmax_fit(x_train: &[f64], num_features: usize) -> Result<MinMaxScaler> {
    if num_features == 0 || x_train.is_empty() || !x_train.len().is_multiple_of(num_features) {
        return Err(Error::Data(format!(
            "cannot fit a scaler on {} values with {num_features} features",
            x_train.len()
        )));
    }
    let mut min = vec![f64::INFINITY; num_features];
    let mut max = vec![f64::NEG_INFINITY; num_features];
    for row in x_train.chunks_exact(num_features) {
        for (j, &v) in row.iter().enumerate() {
            min[j] = min[j].min(v);
            max[j] = max[j].max(v);
        }
    }
    Ok(MinMaxScaler { min, max })
}

pub fn minmax_apply(scaler: &MinMaxScaler, x: &[f64]) -> Result<Vec<f64>> {
    scaler.transform(x)
}
