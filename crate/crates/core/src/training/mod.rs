//! Cross-entropy objective, analytic gradients, ADAM and the training loop.

mod adam;
mod baseline;
mod gradcheck;
mod gradient;
mod loss;
mod trainer;

pub use adam::{adam_step, AdamState};
pub use baseline::{train_baseline_softmax_regression, SoftmaxRegression};
pub use gradcheck::{
    finite_difference_gradcheck, random_gradcheck, relative_error, GradcheckReport, GradcheckSizes,
    ParamCheck, SuiteCase, SuiteReport, REL_ERROR_FLOOR,
};
pub use gradient::{batch_loss, gradients, loss_and_gradients};
pub use loss::{cross_entropy_from_logits, cross_entropy_loss};
pub use trainer::{
    accuracy, train, train_model, train_model_with_progress, TrainConfig, TrainRecord, Trainable,
};
