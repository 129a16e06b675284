use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use super::adam::{adam_step, AdamState};
use super::gradient::{batch_loss, loss_and_gradients};
use crate::error::{Error, Result};
use crate::fuzzy::{predict_batch, FuzzyClassifier};

/// A model the full-batch ADAM loop can optimize.
pub trait Trainable {
    fn num_params(&self) -> usize;
    fn params(&self) -> Vec<f64>;
    fn set_params(&mut self, params: &[f64]) -> Result<()>;
    fn num_features(&self) -> usize;
    fn num_classes(&self) -> usize;
    /// Mean cross-entropy over a row-major batch.
    fn loss(&self, x: &[f64], labels: &[usize]) -> Result<f64>;
    fn loss_and_gradient(&self, x: &[f64], labels: &[usize]) -> Result<(f64, Vec<f64>)>;
    fn predict_rows(&self, x: &[f64]) -> Result<Vec<usize>>;
    fn param_location(&self, index: usize) -> String {
        format!("param[{index}]")
    }
}

impl Trainable for FuzzyClassifier {
    fn num_params(&self) -> usize {
        FuzzyClassifier::num_params(self)
    }

    fn params(&self) -> Vec<f64> {
        FuzzyClassifier::params(self)
    }

    fn set_params(&mut self, params: &[f64]) -> Result<()> {
        FuzzyClassifier::set_params(self, params)
    }

    fn num_features(&self) -> usize {
        self.num_inputs()
    }

    fn num_classes(&self) -> usize {
        FuzzyClassifier::num_classes(self)
    }

    fn loss(&self, x: &[f64], labels: &[usize]) -> Result<f64> {
        batch_loss(self, x, labels)
    }

    fn loss_and_gradient(&self, x: &[f64], labels: &[usize]) -> Result<(f64, Vec<f64>)> {
        loss_and_gradients(self, x, labels)
    }

    fn predict_rows(&self, x: &[f64]) -> Result<Vec<usize>> {
        predict_batch(self, x)
    }

    fn param_location(&self, index: usize) -> String {
        FuzzyClassifier::param_location(self, index)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub max_epochs: usize,
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
    pub seed: u64,
    /// Progress callback cadence in epochs; 0 disables it.
    pub log_every: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            max_epochs: 250,
            lr: 0.01,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
            seed: 0,
            log_every: 0,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_epochs < 1 {
            return Err(Error::Config("max_epochs must be at least 1".into()));
        }
        if !(self.lr.is_finite() && self.lr > 0.0) {
            return Err(Error::Config(format!(
                "lr must be positive, got {}",
                self.lr
            )));
        }
        for (name, b) in [("beta1", self.beta1), ("beta2", self.beta2)] {
            if !(0.0..1.0).contains(&b) {
                return Err(Error::Config(format!("{name} must be in [0, 1), got {b}")));
            }
        }
        if !(self.eps.is_finite() && self.eps > 0.0) {
            return Err(Error::Config(format!(
                "eps must be positive, got {}",
                self.eps
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainRecord {
    /// Full-batch loss at the start of each epoch, before that epoch's update.
    pub losses: Vec<f64>,
    pub final_train_accuracy: f64,
    pub wall_clock_seconds: f64,
    pub epochs_run: usize,
}

impl TrainRecord {
    pub fn final_loss(&self) -> f64 {
        self.losses.last().copied().unwrap_or(f64::NAN)
    }

    /// `epoch,loss` lines, epochs counted from 1.
    pub fn loss_curve(&self) -> String {
        let mut out = String::new();
        for (i, l) in self.losses.iter().enumerate() {
            let _ = writeln!(out, "{},{l}", i + 1);
        }
        out
    }

    pub fn write_loss_curve(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.loss_curve()).map_err(|e| Error::io(path, e))
    }
}

/// Fraction of rows whose prediction equals the label.
pub fn accuracy(predicted: &[usize], labels: &[usize]) -> f64 {
    if labels.is_empty() {
        return 0.0;
    }
    let correct = predicted.iter().zip(labels).filter(|(p, y)| p == y).count();
    correct as f64 / labels.len() as f64
}

fn check_training_set<T: Trainable>(model: &T, x: &[f64], labels: &[usize]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::Data("training set is empty".into()));
    }
    if x.len() != labels.len() * model.num_features() {
        return Err(Error::Shape(format!(
            "training matrix has {} values for {} rows of {} features",
            x.len(),
            labels.len(),
            model.num_features()
        )));
    }
    let c = model.num_classes();
    if let Some(&bad) = labels.iter().find(|&&l| l >= c) {
        return Err(Error::Data(format!(
            "label {bad} out of range for {c} classes"
        )));
    }
    Ok(())
}

/// Full-batch ADAM for exactly `config.max_epochs` epochs, calling `progress`
/// with `(epoch, loss)` every `config.log_every` epochs.
pub fn train_model_with_progress<T: Trainable>(
    mut model: T,
    x: &[f64],
    labels: &[usize],
    config: &TrainConfig,
    mut progress: impl FnMut(usize, f64),
) -> Result<(T, TrainRecord)> {
    config.validate()?;
    check_training_set(&model, x, labels)?;

    let start = Instant::now();
    let mut params = model.params();
    let mut state = AdamState::new(
        params.len(),
        config.lr,
        config.beta1,
        config.beta2,
        config.eps,
    );
    let mut losses = Vec::with_capacity(config.max_epochs);
    for epoch in 1..=config.max_epochs {
        let (loss, grad) = model.loss_and_gradient(x, labels)?;
        if !loss.is_finite() {
            return Err(Error::Diverged { epoch, loss });
        }
        losses.push(loss);
        if config.log_every > 0 && epoch % config.log_every == 0 {
            progress(epoch, loss);
        }
        adam_step(&mut params, &grad, &mut state)?;
        if let Some(i) = params.iter().position(|p| !p.is_finite()) {
            return Err(Error::Numeric {
                location: model.param_location(i),
                detail: format!("parameter became {} at epoch {epoch}", params[i]),
            });
        }
        model.set_params(&params)?;
    }
    let wall_clock_seconds = start.elapsed().as_secs_f64();

    let predicted = model.predict_rows(x)?;
    let record = TrainRecord {
        epochs_run: losses.len(),
        losses,
        final_train_accuracy: accuracy(&predicted, labels),
        wall_clock_seconds,
    };
    Ok((model, record))
}

pub fn train_model<T: Trainable>(
    model: T,
    x: &[f64],
    labels: &[usize],
    config: &TrainConfig,
) -> Result<(T, TrainRecord)> {
    train_model_with_progress(model, x, labels, config, |_, _| {})
}

/// Train a fuzzy classifier on a row-major feature matrix.
pub fn train(
    model: FuzzyClassifier,
    x: &[f64],
    labels: &[usize],
    config: &TrainConfig,
) -> Result<(FuzzyClassifier, TrainRecord)> {
    train_model(model, x, labels, config)
}
