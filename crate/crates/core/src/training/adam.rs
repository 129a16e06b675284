use crate::error::{Error, Result};

/// Bias-corrected ADAM moments and hyperparameters.
#[derive(Debug, Clone, PartialEq)]
pub struct AdamState {
    pub first_moment: Vec<f64>,
    pub second_moment: Vec<f64>,
    pub step_count: u64,
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl AdamState {
    pub fn new(num_params: usize, lr: f64, beta1: f64, beta2: f64, eps: f64) -> Self {
        Self {
            first_moment: vec![0.0; num_params],
            second_moment: vec![0.0; num_params],
            step_count: 0,
            lr,
            beta1,
            beta2,
            eps,
        }
    }
}

pub fn adam_step(params: &mut [f64], grads: &[f64], state: &mut AdamState) -> Result<()> {
    if params.len() != grads.len() || params.len() != state.first_moment.len() {
        return Err(Error::Shape(format!(
            "adam_step: {} params, {} grads, {} moment slots",
            params.len(),
            grads.len(),
            state.first_moment.len()
        )));
    }
    state.step_count += 1;
    let t = state.step_count as i32;
    let bias1 = 1.0 - state.beta1.powi(t);
    let bias2 = 1.0 - state.beta2.powi(t);
    for ((p, &g), (m, v)) in params.iter_mut().zip(grads).zip(
        state
            .first_moment
            .iter_mut()
            .zip(state.second_moment.iter_mut()),
    ) {
        *m = state.beta1 * *m + (1.0 - state.beta1) * g;
        *v = state.beta2 * *v + (1.0 - state.beta2) * g * g;
        let m_hat = *m / bias1;
        let v_hat = *v / bias2;
        *p -= state.lr * m_hat / (v_hat.sqrt() + state.eps);
    }
    Ok(())
}
