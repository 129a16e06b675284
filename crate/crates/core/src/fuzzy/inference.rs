//! Forward pass: fuzzification, product t-norm firing, normalization and the
//! softmax output layer.
//!
//! [`fuzzify`] and [`firing_strengths`] work in the linear domain and are the
//! readable reference path. [`forward`] evaluates the same quantities through
//! log-memberships: a rule's log firing is the sum of its log-memberships, and
//! the normalized firings are a softmax over those sums. This is exactly
//! `w / sum(w)` but survives the underflow that products of many narrow
//! Gaussians produce on high-dimensional inputs.

use super::membership::{gaussian_membership, log_gaussian_unchecked};
use super::model::FuzzyClassifier;
use crate::error::{Error, Result};

/// Guard added to the firing sum in [`normalize_firings`].
pub const FIRING_EPS: f64 = 1e-12;

/// Output of [`forward`].
#[derive(Debug, Clone, PartialEq)]
pub struct Forward {
    pub logits: Vec<f64>,
    pub probs: Vec<f64>,
    /// Normalized firing strength of every rule.
    pub firings: Vec<f64>,
}

/// Row-major `D x M` membership matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Memberships {
    pub num_inputs: usize,
    pub mfs_per_input: usize,
    pub values: Vec<f64>,
}

impl Memberships {
    #[inline]
    pub fn get(&self, input: usize, mf: usize) -> f64 {
        self.values[input * self.mfs_per_input + mf]
    }

    pub fn row(&self, input: usize) -> &[f64] {
        let m = self.mfs_per_input;
        &self.values[input * m..(input + 1) * m]
    }
}

pub(crate) fn check_input(model: &FuzzyClassifier, x: &[f64]) -> Result<()> {
    if x.len() != model.num_inputs() {
        return Err(Error::Shape(format!(
            "feature vector has length {}, model expects {}",
            x.len(),
            model.num_inputs()
        )));
    }
    if let Some(d) = x.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteInput(format!("feature {d} is {}", x[d])));
    }
    Ok(())
}

pub fn fuzzify(model: &FuzzyClassifier, x: &[f64]) -> Result<Memberships> {
    check_input(model, x)?;
    let banks = model.banks();
    let (d, m) = (banks.num_inputs(), banks.mfs_per_input());
    let mut values = Vec::with_capacity(d * m);
    for (input, &xv) in x.iter().enumerate() {
        for mf in 0..m {
            values.push(gaussian_membership(
                xv,
                banks.center(input, mf),
                banks.sigma(input, mf),
            )?);
        }
    }
    Ok(Memberships {
        num_inputs: d,
        mfs_per_input: m,
        values,
    })
}

/// Product t-norm over each rule's selected memberships.
pub fn firing_strengths(model: &FuzzyClassifier, memberships: &Memberships) -> Result<Vec<f64>> {
    let rules = model.rules();
    if memberships.num_inputs != rules.num_inputs()
        || memberships.values.len() != memberships.num_inputs * memberships.mfs_per_input
    {
        return Err(Error::Shape(format!(
            "membership matrix is {}x{}, model has {} inputs",
            memberships.num_inputs,
            memberships.mfs_per_input,
            rules.num_inputs()
        )));
    }
    (0..rules.num_rules())
        .map(|r| {
            rules
                .antecedent_row(r)
                .iter()
                .enumerate()
                .try_fold(1.0, |acc, (d, &a)| {
                    if a >= memberships.mfs_per_input {
                        Err(Error::ModelIntegrity(format!(
                            "rule {r} input {d} references MF {a}, but only {} exist",
                            memberships.mfs_per_input
                        )))
                    } else {
                        Ok(acc * memberships.get(d, a))
                    }
                })
        })
        .collect()
}

/// `w_r / (sum(w) + FIRING_EPS)`. The guard maps an all-zero firing vector to zeros.
pub fn normalize_firings(w: &[f64]) -> Vec<f64> {
    let total: f64 = w.iter().sum::<f64>() + FIRING_EPS;
    w.iter().map(|&v| v / total).collect()
}

/// Softmax with max subtraction.
pub fn softmax(z: &[f64]) -> Vec<f64> {
    let mut out = z.to_vec();
    softmax_in_place(&mut out);
    out
}

pub(crate) fn softmax_in_place(z: &mut [f64]) {
    let max = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut sum = 0.0;
    for v in z.iter_mut() {
        *v = (*v - max).exp();
        sum += *v;
    }
    for v in z.iter_mut() {
        *v /= sum;
    }
}

/// `ln(sum(exp(z)))`, stable for large magnitudes.
pub fn log_sum_exp(z: &[f64]) -> f64 {
    let max = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + z.iter().map(|&v| (v - max).exp()).sum::<f64>().ln()
}

/// Lowest index of the maximum; ties resolve to the smaller class.
pub fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// Scratch buffers reused across samples by the forward pass and the gradient code.
#[derive(Debug, Clone)]
pub(crate) struct Workspace {
    /// `D x M` log-memberships.
    pub log_mu: Vec<f64>,
    /// Normalized firings, length R.
    pub firings: Vec<f64>,
    /// Logits, then (after the softmax) probabilities, length C.
    pub logits: Vec<f64>,
    pub probs: Vec<f64>,
    /// `D x M` derived widths, cached once per parameter set.
    pub sigma: Vec<f64>,
}

impl Workspace {
    pub fn new(model: &FuzzyClassifier) -> Self {
        let banks = model.banks();
        let (d, m) = (banks.num_inputs(), banks.mfs_per_input());
        let sigma = (0..d * m).map(|i| banks.sigma(i / m, i % m)).collect();
        Self {
            log_mu: vec![0.0; d * m],
            firings: vec![0.0; model.num_rules()],
            logits: vec![0.0; model.num_classes()],
            probs: vec![0.0; model.num_classes()],
            sigma,
        }
    }

    /// Forward pass into the buffers. `x` must already be validated.
    pub fn run(&mut self, model: &FuzzyClassifier, x: &[f64]) {
        let banks = model.banks();
        let rules = model.rules();
        let m = banks.mfs_per_input();
        for (input, &xv) in x.iter().enumerate() {
            for mf in 0..m {
                let k = input * m + mf;
                self.log_mu[k] = log_gaussian_unchecked(xv, banks.center(input, mf), self.sigma[k]);
            }
        }

        // Log firings are taken relative to rule 0. Inputs on which a rule agrees
        // with rule 0 contribute exactly nothing, so a membership function shared
        // by every rule leaves the normalized firings bit-for-bit unchanged.
        let d = rules.num_inputs();
        let base = &rules.antecedents()[..d];
        for (r, slot) in self.firings.iter_mut().enumerate() {
            let ants = &rules.antecedents()[r * d..(r + 1) * d];
            *slot = ants
                .iter()
                .zip(base)
                .enumerate()
                .filter(|(_, (a, b))| a != b)
                .map(|(input, (&a, &b))| self.log_mu[input * m + a] - self.log_mu[input * m + b])
                .sum();
        }
        softmax_in_place(&mut self.firings);

        let c = rules.num_classes();
        self.logits.iter_mut().for_each(|z| *z = 0.0);
        for (r, &wn) in self.firings.iter().enumerate() {
            let q = &rules.consequents()[r * c..(r + 1) * c];
            for (z, &qv) in self.logits.iter_mut().zip(q) {
                *z += wn * qv;
            }
        }
        self.probs.copy_from_slice(&self.logits);
        softmax_in_place(&mut self.probs);
    }
}

pub fn forward(model: &FuzzyClassifier, x: &[f64]) -> Result<Forward> {
    check_input(model, x)?;
    let mut ws = Workspace::new(model);
    ws.run(model, x);
    Ok(Forward {
        logits: ws.logits,
        probs: ws.probs,
        firings: ws.firings,
    })
}

pub fn predict(model: &FuzzyClassifier, x: &[f64]) -> Result<usize> {
    Ok(argmax(&forward(model, x)?.probs))
}

/// Predictions for every row of a row-major batch.
pub fn predict_batch(model: &FuzzyClassifier, rows: &[f64]) -> Result<Vec<usize>> {
    let d = model.num_inputs();
    if !rows.len().is_multiple_of(d) {
        return Err(Error::Shape(format!(
            "batch length {} is not a multiple of {d}",
            rows.len()
        )));
    }
    let mut ws = Workspace::new(model);
    rows.chunks_exact(d)
        .map(|x| {
            check_input(model, x)?;
            ws.run(model, x);
            Ok(argmax(&ws.probs))
        })
        .collect()
}
