use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::membership::{param_from_sigma, sigma_from_param};
use crate::error::{Error, Result};

/// Gaussian membership functions for every input dimension, stored row-major
/// as `D x M` (input, membership function).
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipBank {
    num_inputs: usize,
    mfs_per_input: usize,
    centers: Vec<f64>,
    width_params: Vec<f64>,
}

impl MembershipBank {
    pub fn new(
        num_inputs: usize,
        mfs_per_input: usize,
        centers: Vec<f64>,
        width_params: Vec<f64>,
    ) -> Result<Self> {
        if num_inputs == 0 || mfs_per_input == 0 {
            return Err(Error::Config(
                "membership bank needs at least one input and one MF".into(),
            ));
        }
        let len = num_inputs * mfs_per_input;
        if centers.len() != len || width_params.len() != len {
            return Err(Error::Shape(format!(
                "bank {num_inputs}x{mfs_per_input} needs {len} centers and width params, got {} and {}",
                centers.len(),
                width_params.len()
            )));
        }
        if let Some(i) = centers
            .iter()
            .chain(width_params.iter())
            .position(|v| !v.is_finite())
        {
            return Err(Error::ModelIntegrity(format!(
                "non-finite membership parameter at flat index {i}"
            )));
        }
        Ok(Self {
            num_inputs,
            mfs_per_input,
            centers,
            width_params,
        })
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn mfs_per_input(&self) -> usize {
        self.mfs_per_input
    }

    #[inline]
    pub fn center(&self, input: usize, mf: usize) -> f64 {
        self.centers[input * self.mfs_per_input + mf]
    }

    #[inline]
    pub fn width_param(&self, input: usize, mf: usize) -> f64 {
        self.width_params[input * self.mfs_per_input + mf]
    }

    /// Derived width `SIGMA_MIN + softplus(rho)`.
    #[inline]
    pub fn sigma(&self, input: usize, mf: usize) -> f64 {
        sigma_from_param(self.width_param(input, mf))
    }

    pub fn centers(&self) -> &[f64] {
        &self.centers
    }

    pub fn width_params(&self) -> &[f64] {
        &self.width_params
    }

    pub fn centers_row(&self, input: usize) -> &[f64] {
        let m = self.mfs_per_input;
        &self.centers[input * m..(input + 1) * m]
    }
}

/// Antecedent MF indices (`R x D`) and per-rule class logits (`R x C`).
#[derive(Debug, Clone, PartialEq)]
pub struct RuleBase {
    num_rules: usize,
    num_inputs: usize,
    num_classes: usize,
    antecedents: Vec<usize>,
    consequents: Vec<f64>,
}

impl RuleBase {
    pub fn new(
        num_rules: usize,
        num_inputs: usize,
        num_classes: usize,
        antecedents: Vec<usize>,
        consequents: Vec<f64>,
    ) -> Result<Self> {
        if num_rules == 0 {
            return Err(Error::Config("rule base needs at least one rule".into()));
        }
        if antecedents.len() != num_rules * num_inputs {
            return Err(Error::Shape(format!(
                "antecedents must be {num_rules}x{num_inputs}, got {} entries",
                antecedents.len()
            )));
        }
        if consequents.len() != num_rules * num_classes {
            return Err(Error::Shape(format!(
                "consequents must be {num_rules}x{num_classes}, got {} entries",
                consequents.len()
            )));
        }
        if let Some(i) = consequents.iter().position(|v| !v.is_finite()) {
            return Err(Error::ModelIntegrity(format!(
                "non-finite consequent at rule {}, class {}",
                i / num_classes,
                i % num_classes
            )));
        }
        Ok(Self {
            num_rules,
            num_inputs,
            num_classes,
            antecedents,
            consequents,
        })
    }

    pub fn num_rules(&self) -> usize {
        self.num_rules
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    #[inline]
    pub fn antecedent(&self, rule: usize, input: usize) -> usize {
        self.antecedents[rule * self.num_inputs + input]
    }

    pub fn antecedent_row(&self, rule: usize) -> &[usize] {
        &self.antecedents[rule * self.num_inputs..(rule + 1) * self.num_inputs]
    }

    #[inline]
    pub fn consequent(&self, rule: usize, class: usize) -> f64 {
        self.consequents[rule * self.num_classes + class]
    }

    pub fn consequent_row(&self, rule: usize) -> &[f64] {
        &self.consequents[rule * self.num_classes..(rule + 1) * self.num_classes]
    }

    pub fn antecedents(&self) -> &[usize] {
        &self.antecedents
    }

    pub fn consequents(&self) -> &[f64] {
        &self.consequents
    }
}

/// Sizes of a classifier: inputs, classes, MFs per input and rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelShape {
    pub num_inputs: usize,
    pub num_classes: usize,
    pub mfs_per_input: usize,
    pub num_rules: usize,
}

impl ModelShape {
    pub fn new(
        num_inputs: usize,
        num_classes: usize,
        mfs_per_input: usize,
        num_rules: usize,
    ) -> Self {
        Self {
            num_inputs,
            num_classes,
            mfs_per_input,
            num_rules,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_inputs < 1 {
            return Err(Error::Config("need at least one input".into()));
        }
        if self.num_classes < 2 {
            return Err(Error::Config(format!(
                "need at least two classes, got {}",
                self.num_classes
            )));
        }
        if self.mfs_per_input < 1 {
            return Err(Error::Config("need at least one MF per input".into()));
        }
        if self.num_rules < 1 {
            return Err(Error::Config("need at least one rule".into()));
        }
        Ok(())
    }

    /// Length of the flat trainable parameter vector.
    pub fn num_params(&self) -> usize {
        2 * self.num_inputs * self.mfs_per_input + self.num_rules * self.num_classes
    }
}

/// A zero-order TSK classifier: membership banks, a fixed antecedent
/// structure, and trainable consequent logits.
///
/// The trainable parameters flatten to `[centers | width params | consequents]`
/// in row-major order; see [`FuzzyClassifier::params`].
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyClassifier {
    banks: MembershipBank,
    rules: RuleBase,
    seed: u64,
    feature_names: Vec<String>,
    class_names: Vec<String>,
}

impl FuzzyClassifier {
    pub fn from_parts(banks: MembershipBank, rules: RuleBase, seed: u64) -> Result<Self> {
        if banks.num_inputs() != rules.num_inputs() {
            return Err(Error::ModelIntegrity(format!(
                "banks cover {} inputs but antecedents have {} columns",
                banks.num_inputs(),
                rules.num_inputs()
            )));
        }
        if rules.num_classes() < 2 {
            return Err(Error::ModelIntegrity(format!(
                "need at least two classes, got {}",
                rules.num_classes()
            )));
        }
        let m = banks.mfs_per_input();
        for r in 0..rules.num_rules() {
            for d in 0..rules.num_inputs() {
                let a = rules.antecedent(r, d);
                if a >= m {
                    return Err(Error::ModelIntegrity(format!(
                        "rule {r} input {d} references MF {a}, but only {m} exist"
                    )));
                }
            }
        }
        Ok(Self {
            banks,
            rules,
            seed,
            feature_names: Vec::new(),
            class_names: Vec::new(),
        })
    }

    pub fn banks(&self) -> &MembershipBank {
        &self.banks
    }

    pub fn rules(&self) -> &RuleBase {
        &self.rules
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn num_inputs(&self) -> usize {
        self.banks.num_inputs()
    }

    pub fn num_classes(&self) -> usize {
        self.rules.num_classes()
    }

    pub fn mfs_per_input(&self) -> usize {
        self.banks.mfs_per_input()
    }

    pub fn num_rules(&self) -> usize {
        self.rules.num_rules()
    }

    pub fn shape(&self) -> ModelShape {
        ModelShape::new(
            self.num_inputs(),
            self.num_classes(),
            self.mfs_per_input(),
            self.num_rules(),
        )
    }

    /// Optional human-readable names, used by rule export and model files.
    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn with_names(
        mut self,
        feature_names: Vec<String>,
        class_names: Vec<String>,
    ) -> Result<Self> {
        if !feature_names.is_empty() && feature_names.len() != self.num_inputs() {
            return Err(Error::Shape(format!(
                "{} feature names for {} inputs",
                feature_names.len(),
                self.num_inputs()
            )));
        }
        if !class_names.is_empty() && class_names.len() != self.num_classes() {
            return Err(Error::Shape(format!(
                "{} class names for {} classes",
                class_names.len(),
                self.num_classes()
            )));
        }
        self.feature_names = feature_names;
        self.class_names = class_names;
        Ok(self)
    }

    pub fn num_params(&self) -> usize {
        self.shape().num_params()
    }

    /// Flat parameter vector `[centers | width params | consequents]`.
    pub fn params(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.num_params());
        out.extend_from_slice(&self.banks.centers);
        out.extend_from_slice(&self.banks.width_params);
        out.extend_from_slice(&self.rules.consequents);
        out
    }

    /// Overwrite all trainable parameters from a flat vector laid out like [`params`](Self::params).
    pub fn set_params(&mut self, params: &[f64]) -> Result<()> {
        if params.len() != self.num_params() {
            return Err(Error::Shape(format!(
                "parameter vector has {} entries, model needs {}",
                params.len(),
                self.num_params()
            )));
        }
        let bank = self.banks.centers.len();
        let (centers, rest) = params.split_at(bank);
        let (widths, consequents) = rest.split_at(bank);
        self.banks.centers.copy_from_slice(centers);
        self.banks.width_params.copy_from_slice(widths);
        self.rules.consequents.copy_from_slice(consequents);
        Ok(())
    }

    /// Names each flat parameter position, for gradient diagnostics.
    pub fn param_location(&self, index: usize) -> String {
        let dm = self.banks.centers.len();
        let m = self.mfs_per_input();
        let c = self.num_classes();
        if index < dm {
            format!("center[input {}, mf {}]", index / m, index % m)
        } else if index < 2 * dm {
            let i = index - dm;
            format!("width_param[input {}, mf {}]", i / m, i % m)
        } else {
            let i = index - 2 * dm;
            format!("consequent[rule {}, class {}]", i / c, i % c)
        }
    }
}

/// Evenly spaced grid of MFs on `[0, 1]`, seeded random antecedents, zero consequents.
pub fn init_classifier(shape: ModelShape, seed: u64) -> Result<FuzzyClassifier> {
    shape.validate()?;
    let ModelShape {
        num_inputs: d,
        num_classes: c,
        mfs_per_input: m,
        num_rules: r,
    } = shape;

    let (grid, sigma): (Vec<f64>, f64) = if m > 1 {
        let step = (m - 1) as f64;
        ((0..m).map(|i| i as f64 / step).collect(), 0.5 / step)
    } else {
        (vec![0.5], 0.25)
    };
    let rho = param_from_sigma(sigma)?;

    let centers = grid.iter().copied().cycle().take(d * m).collect();
    let width_params = vec![rho; d * m];

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let antecedents = (0..r * d).map(|_| rng.random_range(0..m)).collect();

    let banks = MembershipBank::new(d, m, centers, width_params)?;
    let rules = RuleBase::new(r, d, c, antecedents, vec![0.0; r * c])?;
    FuzzyClassifier::from_parts(banks, rules, seed)
}

/// A fully randomized model for oracle and gradient checks: centers in `[0, 1]`,
/// widths in `[0.2, 0.8]`, consequents in `[-1.5, 1.5]`.
pub fn random_classifier(shape: ModelShape, seed: u64) -> Result<FuzzyClassifier> {
    shape.validate()?;
    let ModelShape {
        num_inputs: d,
        num_classes: c,
        mfs_per_input: m,
        num_rules: r,
    } = shape;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centers: Vec<f64> = (0..d * m).map(|_| rng.random::<f64>()).collect();
    let width_params = (0..d * m)
        .map(|_| param_from_sigma(rng.random_range(0.2..0.8)))
        .collect::<Result<Vec<_>>>()?;
    let antecedents = (0..r * d).map(|_| rng.random_range(0..m)).collect();
    let consequents = (0..r * c).map(|_| rng.random_range(-1.5..1.5)).collect();
    let banks = MembershipBank::new(d, m, centers, width_params)?;
    let rules = RuleBase::new(r, d, c, antecedents, consequents)?;
    FuzzyClassifier::from_parts(banks, rules, seed)
}
