mod common;

use std::collections::BTreeMap;

use common::data_dir;
use gradfuzz::benchmark::reference_row;
use gradfuzz::data::{builtin_keys, builtin_spec, load_csv, minmax_fit, stratified_kfold};
use gradfuzz::fuzzy::{init_classifier, ModelShape};
use gradfuzz::training::{
    accuracy, batch_loss, train_baseline_softmax_regression, TrainConfig, Trainable,
};

// (key, rows, features, classes)
const SHAPES: [(&str, usize, usize, usize); 5] = [
    ("german", 1000, 20, 2),
    ("breast_cancer", 569, 30, 2),
    ("car", 1728, 6, 4),
    ("heart", 303, 11, 2),
    ("wine", 178, 13, 3),
];

#[test]
fn datasets_load_with_expected_shapes() {
    for (key, rows, features, classes) in SHAPES {
        let ds = load_csv(&builtin_spec(key).unwrap(), data_dir()).unwrap();
        assert_eq!(
            (ds.num_rows(), ds.num_features, ds.num_classes()),
            (rows, features, classes),
            "{key}"
        );
    }
    let heart = load_csv(&builtin_spec("heart").unwrap(), data_dir()).unwrap();
    assert_eq!(heart.class_counts(), vec![164, 139]);
    assert!(!heart.feature_names.iter().any(|n| n == "ca" || n == "thal"));
}

#[test]
fn wine_fold_sizes() {
    let ds = load_csv(&builtin_spec("wine").unwrap(), data_dir()).unwrap();
    let plan = stratified_kfold(&ds.y, 5, 42).unwrap();
    let mut sizes: Vec<usize> = plan.folds.iter().map(|f| f.validation.len()).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    assert_eq!(sizes, vec![36, 36, 36, 35, 35]);
}

#[test]
fn folds_partition_and_stratify_every_dataset() {
    for key in builtin_keys() {
        let ds = load_csv(&builtin_spec(&key).unwrap(), data_dir()).unwrap();
        let plan = stratified_kfold(&ds.y, 5, 42).unwrap();
        let mut seen = vec![0usize; ds.num_rows()];
        let mut per_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for fold in &plan.folds {
            let mut counts = vec![0usize; ds.num_classes()];
            for &i in &fold.validation {
                seen[i] += 1;
                counts[ds.y[i]] += 1;
            }
            for (c, n) in counts.into_iter().enumerate() {
                per_class.entry(c).or_default().push(n);
            }
            assert_eq!(fold.train.len() + fold.validation.len(), ds.num_rows());
            assert!(fold.train.iter().all(|i| !fold.validation.contains(i)));
        }
        assert!(seen.iter().all(|&n| n == 1), "{key}: not a partition");
        for (c, counts) in per_class {
            let spread = counts.iter().max().unwrap() - counts.iter().min().unwrap();
            assert!(spread <= 1, "{key}: class {c} counts {counts:?}");
        }
    }
}

#[test]
fn zero_consequent_loss_is_log_c_on_every_dataset() {
    for key in builtin_keys() {
        let spec = builtin_spec(&key).unwrap();
        let ds = load_csv(&spec, data_dir()).unwrap();
        let x = minmax_fit(&ds.x, ds.num_features)
            .unwrap()
            .transform(&ds.x)
            .unwrap();
        let shape = ModelShape::new(
            ds.num_features,
            ds.num_classes(),
            spec.gf.mfs_per_input,
            spec.gf.num_rules,
        );
        let model = init_classifier(shape, 42).unwrap();
        let loss = batch_loss(&model, &x, &ds.y).unwrap();
        let c = ds.num_classes() as f64;
        assert!((loss - c.ln()).abs() <= 1e-12, "{key}: {loss}");
    }
}

#[test]
fn wine_logistic_regression_tracks_published_mean() {
    let ds = load_csv(&builtin_spec("wine").unwrap(), data_dir()).unwrap();
    let plan = stratified_kfold(&ds.y, 5, 42).unwrap();
    let mut total = 0.0;
    for fold in &plan.folds {
        let (xt, yt) = ds.select(&fold.train);
        let (xv, yv) = ds.select(&fold.validation);
        let scaler = minmax_fit(&xt, ds.num_features).unwrap();
        let (xt, xv) = (
            scaler.transform(&xt).unwrap(),
            scaler.transform(&xv).unwrap(),
        );
        let (model, _) = train_baseline_softmax_regression(
            &xt,
            &yt,
            ds.num_features,
            ds.num_classes(),
            &TrainConfig::default(),
        )
        .unwrap();
        total += accuracy(&model.predict_rows(&xv).unwrap(), &yv);
    }
    let mean = 100.0 * total / plan.folds.len() as f64;
    let published = reference_row("wine", "Logistic Regression").unwrap().mean;
    assert!((mean - published).abs() <= 7.0, "{mean} vs {published}");
}
