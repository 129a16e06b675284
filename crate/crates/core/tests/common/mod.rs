#![allow(dead_code)]

use std::path::PathBuf;

use gradfuzz::fuzzy::{random_classifier, FuzzyClassifier, ModelShape};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

/// Two Gaussian blobs at (0.25, 0.25) and (0.75, 0.75), std 0.08, `n / 2` each.
pub fn blobs(n: usize, seed: u64) -> (Vec<f64>, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = Vec::with_capacity(2 * n);
    let mut y = Vec::with_capacity(n);
    for i in 0..n {
        let label = i % 2;
        let center = if label == 0 { 0.25 } else { 0.75 };
        for _ in 0..2 {
            // Box-Muller
            let u1: f64 = 1.0 - rng.random::<f64>();
            let u2: f64 = rng.random();
            let z = (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos();
            x.push(center + 0.08 * z);
        }
        y.push(label);
    }
    (x, y)
}

/// A random small model and a matching batch, all sizes drawn in `1..=max`.
pub fn random_case(
    rng: &mut ChaCha8Rng,
    max: usize,
    max_batch: usize,
) -> (FuzzyClassifier, Vec<f64>, Vec<usize>) {
    let shape = ModelShape::new(
        rng.random_range(1..=max),
        rng.random_range(2..=max),
        rng.random_range(1..=max),
        rng.random_range(1..=max),
    );
    let model = random_classifier(shape, rng.random()).unwrap();
    let n = rng.random_range(1..=max_batch);
    let x = (0..n * shape.num_inputs).map(|_| rng.random()).collect();
    let y = (0..n)
        .map(|_| rng.random_range(0..shape.num_classes))
        .collect();
    (model, x, y)
}

/// Straightforward linear-domain evaluation: memberships, product firing,
/// `w / sum(w)`, weighted logits, softmax.
pub struct NaiveForward {
    pub firings: Vec<f64>,
    pub logits: Vec<f64>,
    pub probs: Vec<f64>,
}

pub fn naive_forward(model: &FuzzyClassifier, x: &[f64]) -> NaiveForward {
    let banks = model.banks();
    let rules = model.rules();
    let mut w = vec![1.0; model.num_rules()];
    for (r, wr) in w.iter_mut().enumerate() {
        for (d, &xd) in x.iter().enumerate() {
            let mf = rules.antecedent(r, d);
            let rho = banks.width_param(d, mf);
            let sigma = 1e-3 + (1.0 + rho.exp()).ln();
            let c = banks.center(d, mf);
            *wr *= (-(xd - c) * (xd - c) / (2.0 * sigma * sigma)).exp();
        }
    }
    let total: f64 = w.iter().sum();
    let firings: Vec<f64> = w.iter().map(|v| v / total).collect();
    let mut logits = vec![0.0; model.num_classes()];
    for (r, f) in firings.iter().enumerate() {
        for (c, z) in logits.iter_mut().enumerate() {
            *z += f * rules.consequent(r, c);
        }
    }
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let e: Vec<f64> = logits.iter().map(|z| (z - max).exp()).collect();
    let s: f64 = e.iter().sum();
    NaiveForward {
        firings,
        logits,
        probs: e.iter().map(|v| v / s).collect(),
    }
}
