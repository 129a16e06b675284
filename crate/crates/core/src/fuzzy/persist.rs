//! JSON model files.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::model::{FuzzyClassifier, MembershipBank, RuleBase};
use crate::error::{Error, Result};

pub const MODEL_FORMAT_VERSION: u32 = 1;

/// On-disk layout of a model. Matrices are nested row-major arrays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub version: u32,
    pub num_inputs: usize,
    pub num_classes: usize,
    pub mfs_per_input: usize,
    pub num_rules: usize,
    pub seed: u64,
    pub centers: Vec<Vec<f64>>,
    pub width_params: Vec<Vec<f64>>,
    pub antecedents: Vec<Vec<usize>>,
    pub consequents: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub feature_names: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub class_names: Vec<String>,
}

fn rows<T: Clone>(flat: &[T], width: usize) -> Vec<Vec<T>> {
    flat.chunks(width).map(<[T]>::to_vec).collect()
}

fn flatten<T: Clone>(name: &str, nested: &[Vec<T>], height: usize, width: usize) -> Result<Vec<T>> {
    if nested.len() != height || nested.iter().any(|r| r.len() != width) {
        return Err(Error::Shape(format!("`{name}` must be {height}x{width}")));
    }
    Ok(nested.concat())
}

impl From<&FuzzyClassifier> for ModelDocument {
    fn from(model: &FuzzyClassifier) -> Self {
        let banks = model.banks();
        let rules = model.rules();
        Self {
            version: MODEL_FORMAT_VERSION,
            num_inputs: model.num_inputs(),
            num_classes: model.num_classes(),
            mfs_per_input: model.mfs_per_input(),
            num_rules: model.num_rules(),
            seed: model.seed(),
            centers: rows(banks.centers(), model.mfs_per_input()),
            width_params: rows(banks.width_params(), model.mfs_per_input()),
            antecedents: rows(rules.antecedents(), model.num_inputs()),
            consequents: rows(rules.consequents(), model.num_classes()),
            feature_names: model.feature_names().to_vec(),
            class_names: model.class_names().to_vec(),
        }
    }
}

impl TryFrom<ModelDocument> for FuzzyClassifier {
    type Error = Error;

    fn try_from(doc: ModelDocument) -> Result<Self> {
        if doc.version != MODEL_FORMAT_VERSION {
            return Err(Error::Config(format!(
                "unsupported model version {} (expected {MODEL_FORMAT_VERSION})",
                doc.version
            )));
        }
        let (d, m, r, c) = (
            doc.num_inputs,
            doc.mfs_per_input,
            doc.num_rules,
            doc.num_classes,
        );
        let banks = MembershipBank::new(
            d,
            m,
            flatten("centers", &doc.centers, d, m)?,
            flatten("width_params", &doc.width_params, d, m)?,
        )?;
        let rules = RuleBase::new(
            r,
            d,
            c,
            flatten("antecedents", &doc.antecedents, r, d)?,
            flatten("consequents", &doc.consequents, r, c)?,
        )?;
        FuzzyClassifier::from_parts(banks, rules, doc.seed)?
            .with_names(doc.feature_names, doc.class_names)
    }
}

impl FuzzyClassifier {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&ModelDocument::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<ModelDocument>(text)?.try_into()
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{forward, random_classifier, ModelShape};

    #[test]
    fn json_round_trip_is_exact() {
        let m = random_classifier(ModelShape::new(3, 2, 4, 7), 21)
            .unwrap()
            .with_names(vec!["a".into(), "b".into(), "c".into()], vec![])
            .unwrap();
        let back = FuzzyClassifier::from_json(&m.to_json().unwrap()).unwrap();
        assert_eq!(back, m);
        let x = [0.3, 0.1, 0.95];
        assert_eq!(forward(&m, &x).unwrap(), forward(&back, &x).unwrap());
    }

    #[test]
    fn carries_the_documented_fields() {
        let m = random_classifier(ModelShape::new(2, 3, 2, 4), 1).unwrap();
        let v: serde_json::Value = serde_json::from_str(&m.to_json().unwrap()).unwrap();
        for key in [
            "version",
            "num_inputs",
            "num_classes",
            "mfs_per_input",
            "num_rules",
            "seed",
            "centers",
            "width_params",
            "antecedents",
            "consequents",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["centers"].as_array().unwrap().len(), 2);
        assert_eq!(v["antecedents"].as_array().unwrap().len(), 4);
        assert_eq!(v["consequents"][0].as_array().unwrap().len(), 3);
    }

    #[test]
    fn rejects_ragged_or_invalid_documents() {
        let m = random_classifier(ModelShape::new(2, 2, 2, 3), 1).unwrap();
        let mut doc = ModelDocument::from(&m);
        doc.centers[1].pop();
        assert!(FuzzyClassifier::try_from(doc).is_err());

        let mut doc = ModelDocument::from(&m);
        doc.antecedents[0][0] = 9;
        assert!(matches!(
            FuzzyClassifier::try_from(doc),
            Err(Error::ModelIntegrity(_))
        ));

        let mut doc = ModelDocument::from(&m);
        doc.version = 7;
        assert!(FuzzyClassifier::try_from(doc).is_err());
    }
}
