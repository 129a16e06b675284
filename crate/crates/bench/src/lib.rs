//! Fixtures shared by the criterion benches.

use gradfuzz::fuzzy::{random_classifier, FuzzyClassifier, ModelShape};

/// A random model with a deterministic batch in `[0, 1]`.
pub struct Fixture {
    pub model: FuzzyClassifier,
    pub x: Vec<f64>,
    pub y: Vec<usize>,
}

/// Shapes matching the built-in dataset configurations.
pub const SHAPES: [(&str, ModelShape); 3] = [
    (
        "wine",
        ModelShape {
            num_inputs: 13,
            num_classes: 3,
            mfs_per_input: 13,
            num_rules: 300,
        },
    ),
    (
        "breast_cancer",
        ModelShape {
            num_inputs: 30,
            num_classes: 2,
            mfs_per_input: 13,
            num_rules: 202,
        },
    ),
    (
        "car",
        ModelShape {
            num_inputs: 6,
            num_classes: 4,
            mfs_per_input: 27,
            num_rules: 128,
        },
    ),
];

pub fn fixture(shape: ModelShape, rows: usize, seed: u64) -> Fixture {
    let model = random_classifier(shape, seed).expect("valid shape");
    // Low-discrepancy fill keeps the batch reproducible without an RNG dependency.
    let x = (0..rows * shape.num_inputs)
        .map(|i| (i as f64 * 0.618_033_988_749_895).fract())
        .collect();
    let y = (0..rows).map(|i| i % shape.num_classes).collect();
    Fixture { model, x, y }
}
