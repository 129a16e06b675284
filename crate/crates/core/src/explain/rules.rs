use std::fmt::Write as _;

use super::vocabulary::LinguisticVocabulary;
use crate::error::{Error, Result};
use crate::fuzzy::FuzzyClassifier;

/// Printed alongside exported rules by front ends.
pub const LOGITS_NOTE: &str =
    "Consequents are raw logits: the prediction is the softmax of the firing-weighted sum of rule logits.";

/// Feature names from the model, or `x0..x{D-1}` when it carries none.
pub fn resolve_feature_names(model: &FuzzyClassifier) -> Vec<String> {
    if model.feature_names().len() == model.num_inputs() {
        model.feature_names().to_vec()
    } else {
        (0..model.num_inputs()).map(|d| format!("x{d}")).collect()
    }
}

pub fn resolve_class_names(model: &FuzzyClassifier) -> Vec<String> {
    if model.class_names().len() == model.num_classes() {
        model.class_names().to_vec()
    } else {
        (0..model.num_classes())
            .map(|c| format!("class_{c}"))
            .collect()
    }
}

fn check_names(
    model: &FuzzyClassifier,
    vocabulary: &LinguisticVocabulary,
    feature_names: &[String],
) -> Result<()> {
    vocabulary.check(model)?;
    if feature_names.len() != model.num_inputs() {
        return Err(Error::Shape(format!(
            "{} feature names for {} inputs",
            feature_names.len(),
            model.num_inputs()
        )));
    }
    Ok(())
}

/// One rule as `IF <feat> is <label> AND ... THEN logits(<class>=.., ...)`.
pub fn rule_text(
    model: &FuzzyClassifier,
    vocabulary: &LinguisticVocabulary,
    feature_names: &[String],
    rule: usize,
) -> Result<String> {
    check_names(model, vocabulary, feature_names)?;
    if rule >= model.num_rules() {
        return Err(Error::Shape(format!(
            "rule {rule} out of range for {} rules",
            model.num_rules()
        )));
    }
    Ok(render_rule(
        model,
        vocabulary,
        feature_names,
        &resolve_class_names(model),
        rule,
    ))
}

fn render_rule(
    model: &FuzzyClassifier,
    vocabulary: &LinguisticVocabulary,
    feature_names: &[String],
    class_names: &[String],
    rule: usize,
) -> String {
    let rules = model.rules();
    let mut line = String::from("IF ");
    for (d, &mf) in rules.antecedent_row(rule).iter().enumerate() {
        if d > 0 {
            line.push_str(" AND ");
        }
        let _ = write!(line, "{} is {}", feature_names[d], vocabulary.label(d, mf));
    }
    line.push_str(" THEN logits(");
    for (c, q) in rules.consequent_row(rule).iter().enumerate() {
        if c > 0 {
            line.push_str(", ");
        }
        let _ = write!(line, "{}={q:.6}", class_names[c]);
    }
    line.push(')');
    line
}

/// Every rule in index order, one per line.
pub fn export_rules(
    model: &FuzzyClassifier,
    vocabulary: &LinguisticVocabulary,
    feature_names: &[String],
) -> Result<String> {
    check_names(model, vocabulary, feature_names)?;
    let class_names = resolve_class_names(model);
    let mut out = String::new();
    for r in 0..model.num_rules() {
        out.push_str(&render_rule(
            model,
            vocabulary,
            feature_names,
            &class_names,
            r,
        ));
        out.push('\n');
    }
    Ok(out)
}
