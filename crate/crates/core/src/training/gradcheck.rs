//! Central finite-difference verification of analytic gradients.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::trainer::Trainable;
use crate::error::{Error, Result};
use crate::fuzzy::{random_classifier, ModelShape};

/// Floor on the relative-error denominator.
pub const REL_ERROR_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct ParamCheck {
    pub index: usize,
    pub location: String,
    pub analytic: f64,
    pub numeric: f64,
    pub rel_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradcheckReport {
    pub step: f64,
    pub params: Vec<ParamCheck>,
}

impl GradcheckReport {
    pub fn max_rel_error(&self) -> f64 {
        self.params.iter().map(|p| p.rel_error).fold(0.0, f64::max)
    }

    pub fn worst(&self) -> Option<&ParamCheck> {
        self.params
            .iter()
            .max_by(|a, b| a.rel_error.total_cmp(&b.rel_error))
    }
}

/// `|g - g_fd| / max(REL_ERROR_FLOOR, |g| + |g_fd|)`.
pub fn relative_error(analytic: f64, numeric: f64) -> f64 {
    (analytic - numeric).abs() / REL_ERROR_FLOOR.max(analytic.abs() + numeric.abs())
}

/// Compare every analytic partial against `(L(theta + h) - L(theta - h)) / 2h`.
pub fn finite_difference_gradcheck<T: Trainable + Clone>(
    model: &T,
    x: &[f64],
    labels: &[usize],
    h: f64,
) -> Result<GradcheckReport> {
    if !(1e-7..=1e-3).contains(&h) {
        return Err(Error::Config(format!(
            "step h must be in [1e-7, 1e-3], got {h}"
        )));
    }
    let (_, analytic) = model.loss_and_gradient(x, labels)?;
    let base = model.params();
    let mut probe = model.clone();
    let mut theta = base.clone();
    let mut params = Vec::with_capacity(base.len());
    for (i, &g) in analytic.iter().enumerate() {
        theta[i] = base[i] + h;
        probe.set_params(&theta)?;
        let plus = probe.loss(x, labels)?;
        theta[i] = base[i] - h;
        probe.set_params(&theta)?;
        let minus = probe.loss(x, labels)?;
        theta[i] = base[i];
        let numeric = (plus - minus) / (2.0 * h);
        params.push(ParamCheck {
            index: i,
            location: model.param_location(i),
            analytic: g,
            numeric,
            rel_error: relative_error(g, numeric),
        });
    }
    Ok(GradcheckReport { step: h, params })
}

/// Size limits for [`random_gradcheck`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradcheckSizes {
    pub cases: usize,
    /// Upper bound on D, M, R and C.
    pub max_dim: usize,
    pub max_batch: usize,
}

impl Default for GradcheckSizes {
    fn default() -> Self {
        Self {
            cases: 50,
            max_dim: 5,
            max_batch: 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteCase {
    pub shape: ModelShape,
    pub batch: usize,
    pub max_rel_error: f64,
    pub worst: Option<ParamCheck>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub step: f64,
    pub cases: Vec<SuiteCase>,
}

impl SuiteReport {
    pub fn max_rel_error(&self) -> f64 {
        self.cases
            .iter()
            .map(|c| c.max_rel_error)
            .fold(0.0, f64::max)
    }

    pub fn worst_case(&self) -> Option<&SuiteCase> {
        self.cases
            .iter()
            .max_by(|a, b| a.max_rel_error.total_cmp(&b.max_rel_error))
    }
}

/// Finite-difference check over randomly sized random models and batches.
pub fn random_gradcheck(seed: u64, sizes: GradcheckSizes, h: f64) -> Result<SuiteReport> {
    if sizes.cases == 0 || sizes.max_dim < 2 || sizes.max_batch == 0 {
        return Err(Error::Config(
            "gradcheck needs at least one case, max_dim >= 2 and max_batch >= 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(sizes.cases);
    for _ in 0..sizes.cases {
        let shape = ModelShape::new(
            rng.random_range(1..=sizes.max_dim),
            rng.random_range(2..=sizes.max_dim),
            rng.random_range(1..=sizes.max_dim),
            rng.random_range(1..=sizes.max_dim),
        );
        let batch = rng.random_range(1..=sizes.max_batch);
        let model = random_classifier(shape, rng.random())?;
        let x: Vec<f64> = (0..batch * shape.num_inputs)
            .map(|_| rng.random())
            .collect();
        let y: Vec<usize> = (0..batch)
            .map(|_| rng.random_range(0..shape.num_classes))
            .collect();
        let report = finite_difference_gradcheck(&model, &x, &y, h)?;
        cases.push(SuiteCase {
            shape,
            batch,
            max_rel_error: report.max_rel_error(),
            worst: report.worst().cloned(),
        });
    }
    Ok(SuiteReport { step: h, cases })
}
