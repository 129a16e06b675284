//! Linguistic rule export and per-prediction traces.

mod rules;
mod trace;
mod vocabulary;

pub use rules::{export_rules, resolve_class_names, resolve_feature_names, rule_text, LOGITS_NOTE};
pub use trace::{trace, PredictionTrace, TracedRule};
pub use vocabulary::{default_labels, LinguisticVocabulary};
