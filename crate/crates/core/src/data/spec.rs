//! Declarative descriptions of the supported UCI datasets.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Delimiter {
    Comma,
    Whitespace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnKind {
    Numeric,
    /// Distinct values coded by lexicographic order.
    Categorical,
    /// Values coded by position in the declared level list.
    Ordinal(Vec<String>),
    /// Row identifier; never a feature.
    Identifier,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnSpec {
    pub name: String,
    pub kind: ColumnKind,
}

impl ColumnSpec {
    pub fn numeric(name: &str) -> Self {
        Self {
            name: name.into(),
            kind: ColumnKind::Numeric,
        }
    }

    pub fn categorical(name: &str) -> Self {
        Self {
            name: name.into(),
            kind: ColumnKind::Categorical,
        }
    }

    pub fn ordinal(name: &str, levels: &[&str]) -> Self {
        Self {
            name: name.into(),
            kind: ColumnKind::Ordinal(levels.iter().map(|s| s.to_string()).collect()),
        }
    }

    pub fn identifier(name: &str) -> Self {
        Self {
            name: name.into(),
            kind: ColumnKind::Identifier,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetMapping {
    /// Raw value at position `i` maps to class `i`.
    Levels(Vec<String>),
    /// Integer severity 0..=4 collapsed to absence (0) / presence (1).
    HeartPresence,
}

impl TargetMapping {
    pub fn num_classes(&self) -> usize {
        match self {
            TargetMapping::Levels(levels) => levels.len(),
            TargetMapping::HeartPresence => 2,
        }
    }

    pub fn class_names(&self) -> Vec<String> {
        match self {
            TargetMapping::Levels(levels) => levels.clone(),
            TargetMapping::HeartPresence => vec!["absence".into(), "presence".into()],
        }
    }

    pub fn map(&self, raw: &str) -> Result<usize> {
        match self {
            TargetMapping::Levels(levels) => levels
                .iter()
                .position(|l| l == raw)
                .ok_or_else(|| Error::Data(format!("unknown target value `{raw}`"))),
            TargetMapping::HeartPresence => {
                let v: f64 = raw
                    .parse()
                    .map_err(|_| Error::Data(format!("target value `{raw}` is not numeric")))?;
                if v.fract() != 0.0 || !(0.0..=255.0).contains(&v) {
                    return Err(Error::Data(format!(
                        "target value `{raw}` is not a severity code"
                    )));
                }
                heart_target_binarize(v as u8)
            }
        }
    }
}

/// Absence (0) versus presence (1..=4) of heart disease.
pub fn heart_target_binarize(raw: u8) -> Result<usize> {
    match raw {
        0 => Ok(0),
        1..=4 => Ok(1),
        other => Err(Error::Data(format!(
            "heart disease severity must be in 0..=4, got {other}"
        ))),
    }
}

/// Model size used for a dataset unless overridden.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GfHyperparams {
    pub mfs_per_input: usize,
    pub num_rules: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSpec {
    /// Short selector used on the command line and in report file names.
    pub key: String,
    pub name: String,
    pub file_name: String,
    /// Path below the UCI machine-learning-databases root.
    pub source_path: String,
    pub delimiter: Delimiter,
    /// Every raw column, in file order.
    pub columns: Vec<ColumnSpec>,
    pub target: String,
    pub target_mapping: TargetMapping,
    pub columns_to_drop: Vec<String>,
    pub expected_rows: Option<usize>,
    /// Feature columns before `columns_to_drop`, excluding target and identifiers.
    pub expected_features: Option<usize>,
    pub expected_classes: Option<usize>,
    pub gf: GfHyperparams,
}

impl DatasetSpec {
    pub fn target_index(&self) -> Result<usize> {
        self.columns
            .iter()
            .position(|c| c.name == self.target)
            .ok_or_else(|| {
                Error::Config(format!(
                    "{}: target column `{}` not declared",
                    self.key, self.target
                ))
            })
    }

    /// Raw feature columns before drops.
    pub fn raw_feature_count(&self) -> usize {
        self.columns
            .iter()
            .filter(|c| c.name != self.target && c.kind != ColumnKind::Identifier)
            .count()
    }

    /// Indices of the columns that become model features, in file order.
    pub fn feature_columns(&self) -> Vec<usize> {
        self.columns
            .iter()
            .enumerate()
            .filter(|(_, c)| {
                c.name != self.target
                    && c.kind != ColumnKind::Identifier
                    && !self.columns_to_drop.contains(&c.name)
            })
            .map(|(i, _)| i)
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        self.target_index()?;
        for drop in &self.columns_to_drop {
            if !self.columns.iter().any(|c| &c.name == drop) {
                return Err(Error::Config(format!(
                    "{}: cannot drop unknown column `{drop}`",
                    self.key
                )));
            }
        }
        if let Some(f) = self.expected_features {
            if f != self.raw_feature_count() {
                return Err(Error::Config(format!(
                    "{}: declares {} feature columns, expected {f}",
                    self.key,
                    self.raw_feature_count()
                )));
            }
        }
        if let Some(c) = self.expected_classes {
            if c != self.target_mapping.num_classes() {
                return Err(Error::Config(format!(
                    "{}: target mapping has {} classes, expected {c}",
                    self.key,
                    self.target_mapping.num_classes()
                )));
            }
        }
        Ok(())
    }
}

fn levels(values: &[&str]) -> Vec<String> {
    values.iter().map(|s| s.to_string()).collect()
}

fn codes(prefix: usize, range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(|i| format!("A{prefix}{i}")).collect()
}

fn coded(name: &str, levels: Vec<String>) -> ColumnSpec {
    ColumnSpec {
        name: name.into(),
        kind: ColumnKind::Ordinal(levels),
    }
}

pub fn german_credit() -> DatasetSpec {
    let columns = vec![
        coded("checking_status", codes(1, 1..=4)),
        ColumnSpec::numeric("duration"),
        coded("credit_history", codes(3, 0..=4)),
        coded("purpose", codes(4, 0..=10)),
        ColumnSpec::numeric("credit_amount"),
        coded("savings", codes(6, 1..=5)),
        coded("employment", codes(7, 1..=5)),
        ColumnSpec::numeric("installment_rate"),
        coded("personal_status", codes(9, 1..=5)),
        coded("other_debtors", codes(10, 1..=3)),
        ColumnSpec::numeric("residence_since"),
        coded("property", codes(12, 1..=4)),
        ColumnSpec::numeric("age"),
        coded("other_installment_plans", codes(14, 1..=3)),
        coded("housing", codes(15, 1..=3)),
        ColumnSpec::numeric("existing_credits"),
        coded("job", codes(17, 1..=4)),
        ColumnSpec::numeric("num_dependents"),
        coded("telephone", codes(19, 1..=2)),
        coded("foreign_worker", codes(20, 1..=2)),
        ColumnSpec::numeric("credit_risk"),
    ];
    DatasetSpec {
        key: "german".into(),
        name: "Statlog (German Credit Data)".into(),
        file_name: "german.data".into(),
        source_path: "statlog/german/german.data".into(),
        delimiter: Delimiter::Whitespace,
        columns,
        target: "credit_risk".into(),
        target_mapping: TargetMapping::Levels(levels(&["1", "2"])),
        columns_to_drop: vec![],
        expected_rows: Some(1000),
        expected_features: Some(20),
        expected_classes: Some(2),
        gf: GfHyperparams {
            mfs_per_input: 6,
            num_rules: 85,
        },
    }
}

pub fn breast_cancer() -> DatasetSpec {
    let base = [
        "radius",
        "texture",
        "perimeter",
        "area",
        "smoothness",
        "compactness",
        "concavity",
        "concave_points",
        "symmetry",
        "fractal_dimension",
    ];
    let mut columns = vec![
        ColumnSpec::identifier("id"),
        ColumnSpec::categorical("diagnosis"),
    ];
    for stat in ["mean", "se", "worst"] {
        for b in base {
            columns.push(ColumnSpec::numeric(&format!("{b}_{stat}")));
        }
    }
    DatasetSpec {
        key: "breast_cancer".into(),
        name: "Breast Cancer Wisconsin (Diagnostic)".into(),
        file_name: "wdbc.data".into(),
        source_path: "breast-cancer-wisconsin/wdbc.data".into(),
        delimiter: Delimiter::Comma,
        columns,
        target: "diagnosis".into(),
        target_mapping: TargetMapping::Levels(levels(&["B", "M"])),
        columns_to_drop: vec![],
        expected_rows: Some(569),
        expected_features: Some(30),
        expected_classes: Some(2),
        gf: GfHyperparams {
            mfs_per_input: 13,
            num_rules: 202,
        },
    }
}

pub fn car_evaluation() -> DatasetSpec {
    let price = ["low", "med", "high", "vhigh"];
    DatasetSpec {
        key: "car".into(),
        name: "Car Evaluation".into(),
        file_name: "car.data".into(),
        source_path: "car/car.data".into(),
        delimiter: Delimiter::Comma,
        columns: vec![
            ColumnSpec::ordinal("buying", &price),
            ColumnSpec::ordinal("maint", &price),
            ColumnSpec::ordinal("doors", &["2", "3", "4", "5more"]),
            ColumnSpec::ordinal("persons", &["2", "4", "more"]),
            ColumnSpec::ordinal("lug_boot", &["small", "med", "big"]),
            ColumnSpec::ordinal("safety", &["low", "med", "high"]),
            ColumnSpec::categorical("class"),
        ],
        target: "class".into(),
        target_mapping: TargetMapping::Levels(levels(&["unacc", "acc", "good", "vgood"])),
        columns_to_drop: vec![],
        expected_rows: Some(1728),
        expected_features: Some(6),
        expected_classes: Some(4),
        gf: GfHyperparams {
            mfs_per_input: 27,
            num_rules: 128,
        },
    }
}

pub fn heart_disease() -> DatasetSpec {
    let columns = [
        "age", "sex", "cp", "trestbps", "chol", "fbs", "restecg", "thalach", "exang", "oldpeak",
        "slope", "ca", "thal", "num",
    ]
    .iter()
    .map(|n| ColumnSpec::numeric(n))
    .collect();
    DatasetSpec {
        key: "heart".into(),
        name: "Heart Disease".into(),
        file_name: "processed.cleveland.data".into(),
        source_path: "heart-disease/processed.cleveland.data".into(),
        delimiter: Delimiter::Comma,
        columns,
        target: "num".into(),
        target_mapping: TargetMapping::HeartPresence,
        columns_to_drop: vec!["ca".into(), "thal".into()],
        expected_rows: Some(303),
        expected_features: Some(13),
        expected_classes: Some(2),
        gf: GfHyperparams {
            mfs_per_input: 13,
            num_rules: 300,
        },
    }
}

pub fn wine() -> DatasetSpec {
    let mut columns = vec![ColumnSpec::categorical("cultivar")];
    columns.extend(
        [
            "alcohol",
            "malic_acid",
            "ash",
            "alcalinity_of_ash",
            "magnesium",
            "total_phenols",
            "flavanoids",
            "nonflavanoid_phenols",
            "proanthocyanins",
            "color_intensity",
            "hue",
            "od280_od315",
            "proline",
        ]
        .iter()
        .map(|n| ColumnSpec::numeric(n)),
    );
    DatasetSpec {
        key: "wine".into(),
        name: "Wine".into(),
        file_name: "wine.data".into(),
        source_path: "wine/wine.data".into(),
        delimiter: Delimiter::Comma,
        columns,
        target: "cultivar".into(),
        target_mapping: TargetMapping::Levels(levels(&["1", "2", "3"])),
        columns_to_drop: vec![],
        expected_rows: Some(178),
        expected_features: Some(13),
        expected_classes: Some(3),
        gf: GfHyperparams {
            mfs_per_input: 13,
            num_rules: 300,
        },
    }
}

/// German Credit, Breast Cancer, Car Evaluation, Heart Disease, Wine.
pub fn builtin_specs() -> Vec<DatasetSpec> {
    vec![
        german_credit(),
        breast_cancer(),
        car_evaluation(),
        heart_disease(),
        wine(),
    ]
}

/// Look up a built-in spec by its key.
pub fn builtin_spec(key: &str) -> Result<DatasetSpec> {
    builtin_specs()
        .into_iter()
        .find(|s| s.key == key)
        .ok_or_else(|| Error::UnknownDataset(key.into()))
}

/// Keys of the built-in datasets, in benchmark order.
pub fn builtin_keys() -> Vec<String> {
    builtin_specs().into_iter().map(|s| s.key).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_shapes() {
        let expect = [
            ("german", 1000, 20, 2),
            ("breast_cancer", 569, 30, 2),
            ("car", 1728, 6, 4),
            ("heart", 303, 13, 2),
            ("wine", 178, 13, 3),
        ];
        let specs = builtin_specs();
        assert_eq!(specs.len(), 5);
        for (spec, (key, rows, feats, classes)) in specs.iter().zip(expect) {
            assert_eq!(spec.key, key);
            assert_eq!(spec.expected_rows, Some(rows));
            assert_eq!(spec.expected_features, Some(feats));
            assert_eq!(spec.expected_classes, Some(classes));
            spec.validate().unwrap();
        }
    }

    #[test]
    fn gf_sizes() {
        let sizes: Vec<(usize, usize)> = builtin_specs()
            .iter()
            .map(|s| (s.gf.mfs_per_input, s.gf.num_rules))
            .collect();
        assert_eq!(
            sizes,
            vec![(6, 85), (13, 202), (27, 128), (13, 300), (13, 300)]
        );
    }

    #[test]
    fn heart_binarization() {
        assert_eq!(heart_target_binarize(0).unwrap(), 0);
        assert_eq!(heart_target_binarize(3).unwrap(), 1);
        for v in 1..=4 {
            assert_eq!(heart_target_binarize(v).unwrap(), 1);
        }
        assert!(heart_target_binarize(5).is_err());
        let m = TargetMapping::HeartPresence;
        assert_eq!(m.map("2").unwrap(), 1);
        assert_eq!(m.map("0.0").unwrap(), 0);
        assert!(m.map("1.5").is_err());
        assert!(m.map("x").is_err());
    }

    #[test]
    fn heart_drops_leave_eleven_features() {
        assert_eq!(heart_disease().feature_columns().len(), 11);
        assert_eq!(breast_cancer().feature_columns().len(), 30);
    }

    #[test]
    fn unknown_key() {
        assert!(matches!(
            builtin_spec("iris"),
            Err(Error::UnknownDataset(_))
        ));
        assert_eq!(builtin_spec("car").unwrap().gf.mfs_per_input, 27);
    }
}
