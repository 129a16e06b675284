use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::rules::{resolve_class_names, resolve_feature_names, rule_text, LOGITS_NOTE};
use super::vocabulary::LinguisticVocabulary;
use crate::error::{Error, Result};
use crate::fuzzy::{argmax, forward, FuzzyClassifier};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TracedRule {
    pub rule: usize,
    pub text: String,
    /// Normalized firing strength for this input.
    pub firing: f64,
    pub logits: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionTrace {
    pub input: Vec<f64>,
    /// Sorted by descending firing.
    pub rules: Vec<TracedRule>,
    /// Sum of all R normalized firings, not only the listed ones.
    pub firing_total: f64,
    pub class_names: Vec<String>,
    pub probabilities: Vec<f64>,
    pub predicted: usize,
}

impl PredictionTrace {
    pub fn predicted_name(&self) -> &str {
        &self.class_names[self.predicted]
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "prediction: {} (class {})",
            self.predicted_name(),
            self.predicted
        );
        out.push_str("probabilities:");
        for (name, p) in self.class_names.iter().zip(&self.probabilities) {
            let _ = write!(out, " {name}={p:.6}");
        }
        let _ = writeln!(
            out,
            "\ntop {} rules by normalized firing:",
            self.rules.len()
        );
        for r in &self.rules {
            let _ = writeln!(out, "  [{:>4}] w={:.6}  {}", r.rule, r.firing, r.text);
        }
        let _ = writeln!(out, "note: {LOGITS_NOTE}");
        out
    }
}

/// Forward pass with the `k` most strongly firing rules. `k` is clamped to R.
pub fn trace(model: &FuzzyClassifier, x: &[f64], k: usize) -> Result<PredictionTrace> {
    if k == 0 {
        return Err(Error::Config("trace needs k >= 1".into()));
    }
    let out = forward(model, x)?;
    let vocab = LinguisticVocabulary::from_model(model);
    let names = resolve_feature_names(model);

    let mut order: Vec<usize> = (0..model.num_rules()).collect();
    // Stable sort keeps lower rule indices first among ties.
    order.sort_by(|&a, &b| out.firings[b].total_cmp(&out.firings[a]));
    let rules = order
        .into_iter()
        .take(k.min(model.num_rules()))
        .map(|r| {
            Ok(TracedRule {
                rule: r,
                text: rule_text(model, &vocab, &names, r)?,
                firing: out.firings[r],
                logits: model.rules().consequent_row(r).to_vec(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(PredictionTrace {
        input: x.to_vec(),
        rules,
        firing_total: out.firings.iter().sum(),
        class_names: resolve_class_names(model),
        predicted: argmax(&out.probs),
        probabilities: out.probs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{init_classifier, predict, random_classifier, ModelShape};

    #[test]
    fn single_rule_fires_fully() {
        let model = random_classifier(ModelShape::new(3, 2, 2, 1), 5).unwrap();
        let t = trace(&model, &[0.1, 0.9, 0.4], 5).unwrap();
        assert_eq!(t.rules.len(), 1);
        assert!((t.rules[0].firing - 1.0).abs() < 1e-12);
    }

    #[test]
    fn k_is_clamped_and_zero_rejected() {
        let model = init_classifier(ModelShape::new(2, 2, 3, 4), 0).unwrap();
        assert_eq!(trace(&model, &[0.2, 0.3], 100).unwrap().rules.len(), 4);
        assert!(matches!(
            trace(&model, &[0.2, 0.3], 0),
            Err(Error::Config(_))
        ));
        assert!(trace(&model, &[0.2], 1).is_err());
    }

    #[test]
    fn sorted_and_consistent() {
        let model = random_classifier(ModelShape::new(4, 3, 3, 12), 2).unwrap();
        let x = [0.3, 0.7, 0.1, 0.5];
        let t = trace(&model, &x, 5).unwrap();
        assert!(t.rules.windows(2).all(|w| w[0].firing >= w[1].firing));
        assert!((t.firing_total - 1.0).abs() < 1e-9);
        assert_eq!(t.predicted, predict(&model, &x).unwrap());
        let text = t.to_text();
        assert_eq!(text.lines().filter(|l| l.starts_with("  [")).count(), 5);
        let parsed: PredictionTrace = serde_json::from_str(&t.to_json().unwrap()).unwrap();
        assert_eq!(parsed, t);
    }
}
