use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::FuzzyClassifier;

/// Names for `m` membership functions, lowest center first.
pub fn default_labels(m: usize) -> Vec<String> {
    let fixed: &[&str] = match m {
        2 => &["low", "high"],
        3 => &["low", "medium", "high"],
        5 => &["very-low", "low", "medium", "high", "very-high"],
        _ => &[],
    };
    if fixed.is_empty() {
        (0..m).map(|i| format!("level_{i}")).collect()
    } else {
        fixed.iter().map(|s| s.to_string()).collect()
    }
}

/// Per-input linguistic labels, indexed by membership function.
///
/// `labels[d][mf]` names MF `mf` of input `d`. Labels are handed out by rank of
/// the MF's current center, so the vocabulary must be rebuilt after training.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinguisticVocabulary {
    labels: Vec<Vec<String>>,
}

impl LinguisticVocabulary {
    pub fn from_model(model: &FuzzyClassifier) -> Self {
        let m = model.mfs_per_input();
        let names = default_labels(m);
        let labels = (0..model.num_inputs())
            .map(|d| {
                let centers = model.banks().centers_row(d);
                let mut order: Vec<usize> = (0..m).collect();
                // Stable: equal centers keep index order.
                order.sort_by(|&a, &b| centers[a].total_cmp(&centers[b]));
                let mut row = vec![String::new(); m];
                for (rank, &mf) in order.iter().enumerate() {
                    row[mf] = names[rank].clone();
                }
                row
            })
            .collect();
        Self { labels }
    }

    /// Explicit labels; each input needs distinct, non-empty names.
    pub fn from_labels(labels: Vec<Vec<String>>) -> Result<Self> {
        for (d, row) in labels.iter().enumerate() {
            for (i, l) in row.iter().enumerate() {
                if l.trim().is_empty() || l.contains(char::is_whitespace) {
                    return Err(Error::Config(format!(
                        "input {d}: label `{l}` must be one non-empty word"
                    )));
                }
                if row[..i].contains(l) {
                    return Err(Error::Config(format!("input {d}: duplicate label `{l}`")));
                }
            }
        }
        Ok(Self { labels })
    }

    pub fn num_inputs(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self, input: usize) -> &[String] {
        &self.labels[input]
    }

    pub fn label(&self, input: usize, mf: usize) -> &str {
        &self.labels[input][mf]
    }

    pub fn mf_for_label(&self, input: usize, label: &str) -> Option<usize> {
        self.labels.get(input)?.iter().position(|l| l == label)
    }

    /// Error unless the vocabulary covers exactly the model's inputs and MFs.
    pub fn check(&self, model: &FuzzyClassifier) -> Result<()> {
        if self.labels.len() != model.num_inputs() {
            return Err(Error::Shape(format!(
                "vocabulary covers {} inputs, model has {}",
                self.labels.len(),
                model.num_inputs()
            )));
        }
        if let Some((d, row)) = self
            .labels
            .iter()
            .enumerate()
            .find(|(_, row)| row.len() != model.mfs_per_input())
        {
            return Err(Error::Shape(format!(
                "input {d} has {} labels, model has {} MFs per input",
                row.len(),
                model.mfs_per_input()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{init_classifier, random_classifier, ModelShape};

    #[test]
    fn fixed_vocabularies() {
        assert_eq!(default_labels(2), ["low", "high"]);
        assert_eq!(default_labels(3), ["low", "medium", "high"]);
        assert_eq!(default_labels(5)[0], "very-low");
        assert_eq!(
            default_labels(4),
            ["level_0", "level_1", "level_2", "level_3"]
        );
        assert_eq!(default_labels(1), ["level_0"]);
    }

    #[test]
    fn labels_follow_center_rank() {
        let model = random_classifier(ModelShape::new(4, 2, 5, 3), 9).unwrap();
        let vocab = LinguisticVocabulary::from_model(&model);
        vocab.check(&model).unwrap();
        let names = default_labels(5);
        for d in 0..4 {
            let centers = model.banks().centers_row(d);
            for a in 0..5 {
                for b in 0..5 {
                    let ra = names.iter().position(|n| n == vocab.label(d, a)).unwrap();
                    let rb = names.iter().position(|n| n == vocab.label(d, b)).unwrap();
                    if centers[a] < centers[b] {
                        assert!(ra < rb);
                    }
                }
            }
        }
    }

    #[test]
    fn evenly_spaced_init_keeps_index_order() {
        let model = init_classifier(ModelShape::new(2, 2, 3, 4), 1).unwrap();
        let vocab = LinguisticVocabulary::from_model(&model);
        assert_eq!(vocab.labels(1), ["low", "medium", "high"]);
        assert_eq!(vocab.mf_for_label(1, "high"), Some(2));
        assert_eq!(vocab.mf_for_label(1, "huge"), None);
    }

    #[test]
    fn shape_mismatch_and_bad_labels() {
        let model = init_classifier(ModelShape::new(2, 2, 3, 4), 1).unwrap();
        let short = LinguisticVocabulary::from_labels(vec![default_labels(3)]).unwrap();
        assert!(short.check(&model).is_err());
        let wrong_m =
            LinguisticVocabulary::from_labels(vec![default_labels(3), default_labels(2)]).unwrap();
        assert!(wrong_m.check(&model).is_err());
        assert!(LinguisticVocabulary::from_labels(vec![vec!["a".into(), "a".into()]]).is_err());
        assert!(LinguisticVocabulary::from_labels(vec![vec!["very low".into()]]).is_err());
    }
}
