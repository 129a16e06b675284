mod common;

use std::collections::BTreeSet;

use common::{blobs, random_case};
use gradfuzz::explain::{export_rules, resolve_feature_names, trace, LinguisticVocabulary};
use gradfuzz::fuzzy::{init_classifier, predict, ModelShape};
use gradfuzz::training::{train, TrainConfig};
use gradfuzz::FuzzyClassifier;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Recover antecedent indices from the rule text, mapping labels back via the
/// vocabulary. Independent of the renderer.
fn parse_antecedents(
    text: &str,
    vocab: &LinguisticVocabulary,
    names: &[String],
) -> Vec<Vec<usize>> {
    text.lines()
        .map(|line| {
            let body = line.strip_prefix("IF ").expect("rule starts with IF");
            let (conds, _) = body.split_once(" THEN ").expect("rule has THEN");
            conds
                .split(" AND ")
                .enumerate()
                .map(|(d, cond)| {
                    let (feat, label) = cond.split_once(" is ").expect("`<feat> is <label>`");
                    assert_eq!(feat, names[d]);
                    vocab.mf_for_label(d, label).expect("known label")
                })
                .collect()
        })
        .collect()
}

#[test]
fn exported_rules_parse_back_to_the_antecedents() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..30 {
        let (model, _, _) = random_case(&mut rng, 5, 1);
        let vocab = LinguisticVocabulary::from_model(&model);
        let names = resolve_feature_names(&model);
        let text = export_rules(&model, &vocab, &names).unwrap();
        assert_eq!(text.lines().count(), model.num_rules());
        let parsed = parse_antecedents(&text, &vocab, &names);
        for (r, row) in parsed.iter().enumerate() {
            assert_eq!(row.as_slice(), model.rules().antecedent_row(r));
        }
    }
}

#[test]
fn trace_agrees_with_predict_on_100_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..100 {
        let (model, x, _) = random_case(&mut rng, 5, 1);
        let t = trace(&model, &x, 3).unwrap();
        assert_eq!(t.predicted, predict(&model, &x).unwrap());
        assert!((t.firing_total - 1.0).abs() <= 1e-9);
        assert!(t.rules.len() <= model.num_rules());
    }
}

#[test]
fn full_trace_lists_every_rule_once() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let (model, x, _) = random_case(&mut rng, 5, 1);
        let r = model.num_rules();
        let t = trace(&model, &x, r).unwrap();
        let ids: BTreeSet<usize> = t.rules.iter().map(|e| e.rule).collect();
        assert_eq!(ids.len(), r);
        assert_eq!(t.rules.len(), r);
        assert!(t.rules.windows(2).all(|w| w[0].firing >= w[1].firing));
    }
}

fn assert_labels_ascend(model: &FuzzyClassifier) {
    let vocab = LinguisticVocabulary::from_model(model);
    for d in 0..model.num_inputs() {
        let labels = vocab.labels(d);
        let mut by_center: Vec<usize> = (0..model.mfs_per_input()).collect();
        by_center.sort_by(|&a, &b| {
            model
                .banks()
                .center(d, a)
                .total_cmp(&model.banks().center(d, b))
        });
        let expected = gradfuzz::explain::default_labels(model.mfs_per_input());
        for (rank, &mf) in by_center.iter().enumerate() {
            assert_eq!(labels[mf], expected[rank]);
        }
    }
}

#[test]
fn labels_follow_trained_centers() {
    let (x, y) = blobs(80, 4);
    let mut model = init_classifier(ModelShape::new(2, 2, 3, 9), 2).unwrap();
    for epochs in [1, 20, 200] {
        let cfg = TrainConfig {
            max_epochs: epochs,
            lr: 0.2,
            ..TrainConfig::default()
        };
        model = train(model, &x, &y, &cfg).unwrap().0;
        assert_labels_ascend(&model);
    }
}
