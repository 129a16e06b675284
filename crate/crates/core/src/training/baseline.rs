//! Multinomial logistic regression trained by the same ADAM loop, as a sanity
//! baseline for the harness.

use super::trainer::{train_model, TrainConfig, TrainRecord, Trainable};
use crate::error::{Error, Result};
use crate::fuzzy::{argmax, log_sum_exp, softmax};

/// `z = W x + b` with `W` stored row-major as `C x D`.
#[derive(Debug, Clone, PartialEq)]
pub struct SoftmaxRegression {
    num_features: usize,
    num_classes: usize,
    weights: Vec<f64>,
    bias: Vec<f64>,
}

impl SoftmaxRegression {
    pub fn zeros(num_features: usize, num_classes: usize) -> Result<Self> {
        if num_features == 0 || num_classes < 2 {
            return Err(Error::Config(format!(
                "softmax regression needs >= 1 feature and >= 2 classes, got {num_features} and {num_classes}"
            )));
        }
        Ok(Self {
            num_features,
            num_classes,
            weights: vec![0.0; num_features * num_classes],
            bias: vec![0.0; num_classes],
        })
    }

    fn logits_into(&self, row: &[f64], out: &mut [f64]) {
        let d = self.num_features;
        for (k, z) in out.iter_mut().enumerate() {
            let w = &self.weights[k * d..(k + 1) * d];
            *z = self.bias[k] + w.iter().zip(row).map(|(a, b)| a * b).sum::<f64>();
        }
    }

    pub fn probs(&self, row: &[f64]) -> Result<Vec<f64>> {
        if row.len() != self.num_features {
            return Err(Error::Shape(format!(
                "row has {} features, model expects {}",
                row.len(),
                self.num_features
            )));
        }
        let mut z = vec![0.0; self.num_classes];
        self.logits_into(row, &mut z);
        Ok(softmax(&z))
    }

    fn check(&self, x: &[f64], labels: &[usize]) -> Result<()> {
        if labels.is_empty() || x.len() != labels.len() * self.num_features {
            return Err(Error::Shape(format!(
                "batch of {} values does not hold {} rows of {}",
                x.len(),
                labels.len(),
                self.num_features
            )));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= self.num_classes) {
            return Err(Error::Data(format!("label {bad} out of range")));
        }
        Ok(())
    }
}

impl Trainable for SoftmaxRegression {
    fn num_params(&self) -> usize {
        self.weights.len() + self.bias.len()
    }

    fn params(&self) -> Vec<f64> {
        [self.weights.as_slice(), self.bias.as_slice()].concat()
    }

    fn set_params(&mut self, params: &[f64]) -> Result<()> {
        if params.len() != self.num_params() {
            return Err(Error::Shape(format!(
                "expected {} parameters, got {}",
                self.num_params(),
                params.len()
            )));
        }
        let (w, b) = params.split_at(self.weights.len());
        self.weights.copy_from_slice(w);
        self.bias.copy_from_slice(b);
        Ok(())
    }

    fn num_features(&self) -> usize {
        self.num_features
    }

    fn num_classes(&self) -> usize {
        self.num_classes
    }

    fn loss(&self, x: &[f64], labels: &[usize]) -> Result<f64> {
        self.check(x, labels)?;
        let mut z = vec![0.0; self.num_classes];
        let total: f64 = x
            .chunks_exact(self.num_features)
            .zip(labels)
            .map(|(row, &y)| {
                self.logits_into(row, &mut z);
                log_sum_exp(&z) - z[y]
            })
            .sum();
        Ok(total / labels.len() as f64)
    }

    fn loss_and_gradient(&self, x: &[f64], labels: &[usize]) -> Result<(f64, Vec<f64>)> {
        self.check(x, labels)?;
        let (d, c) = (self.num_features, self.num_classes);
        let scale = 1.0 / labels.len() as f64;
        let mut grad = vec![0.0; self.num_params()];
        let mut z = vec![0.0; c];
        let mut loss = 0.0;
        for (row, &y) in x.chunks_exact(d).zip(labels) {
            self.logits_into(row, &mut z);
            loss += log_sum_exp(&z) - z[y];
            let p = softmax(&z);
            for k in 0..c {
                let g = (p[k] - if k == y { 1.0 } else { 0.0 }) * scale;
                for (gw, &xv) in grad[k * d..(k + 1) * d].iter_mut().zip(row) {
                    *gw += g * xv;
                }
                grad[c * d + k] += g;
            }
        }
        Ok((loss * scale, grad))
    }

    fn predict_rows(&self, x: &[f64]) -> Result<Vec<usize>> {
        let mut z = vec![0.0; self.num_classes];
        Ok(x.chunks_exact(self.num_features)
            .map(|row| {
                self.logits_into(row, &mut z);
                argmax(&z)
            })
            .collect())
    }
}

pub fn train_baseline_softmax_regression(
    x: &[f64],
    labels: &[usize],
    num_features: usize,
    num_classes: usize,
    config: &TrainConfig,
) -> Result<(SoftmaxRegression, TrainRecord)> {
    train_model(
        SoftmaxRegression::zeros(num_features, num_classes)?,
        x,
        labels,
        config,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_init_is_uniform_with_ln_c_loss() {
        let m = SoftmaxRegression::zeros(3, 4).unwrap();
        let p = m.probs(&[0.2, 0.5, 0.9]).unwrap();
        assert!(p.iter().all(|&v| (v - 0.25).abs() < 1e-15));
        let x = [0.2, 0.5, 0.9, 0.1, 0.1, 0.1];
        let l = m.loss(&x, &[0, 3]).unwrap();
        assert!((l - 4f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut m = SoftmaxRegression::zeros(2, 3).unwrap();
        let p: Vec<f64> = (0..m.num_params())
            .map(|i| ((i * 7) % 5) as f64 * 0.3 - 0.6)
            .collect();
        m.set_params(&p).unwrap();
        let x = [0.1, 0.9, 0.5, 0.3, 0.8, 0.2];
        let y = [2, 0, 1];
        let (_, g) = m.loss_and_gradient(&x, &y).unwrap();
        let h = 1e-6;
        for i in 0..p.len() {
            let mut plus = m.clone();
            let mut minus = m.clone();
            let mut pp = p.clone();
            pp[i] += h;
            plus.set_params(&pp).unwrap();
            pp[i] -= 2.0 * h;
            minus.set_params(&pp).unwrap();
            let fd = (plus.loss(&x, &y).unwrap() - minus.loss(&x, &y).unwrap()) / (2.0 * h);
            assert!((fd - g[i]).abs() < 1e-8, "param {i}: {fd} vs {}", g[i]);
        }
    }
}
