//! The classifier itself: parameterization, inference and model files.

mod inference;
mod membership;
mod model;
mod persist;

pub use inference::{
    argmax, firing_strengths, forward, fuzzify, log_sum_exp, normalize_firings, predict,
    predict_batch, softmax, Forward, Memberships, FIRING_EPS,
};
pub(crate) use inference::{check_input, Workspace};
pub(crate) use membership::logistic;
pub use membership::{
    gaussian_membership, param_from_sigma, sigma_from_param, softplus, softplus_inverse, SIGMA_MIN,
};
pub use model::{
    init_classifier, random_classifier, FuzzyClassifier, MembershipBank, ModelShape, RuleBase,
};
pub use persist::{ModelDocument, MODEL_FORMAT_VERSION};
