//! Analytic gradient of the mean cross-entropy with respect to every trainable
//! parameter of a [`FuzzyClassifier`].
//!
//! Per sample, with `g_c = (p_c - [c = y]) / B`:
//!
//! * consequents: `dL/dq(r,c) = w_r g_c`
//! * normalized firings are a softmax over log firings `l_r`, so with
//!   `u_r = sum_c g_c q(r,c)`: `dL/dl_r = w_r (u_r - sum_s w_s u_s)`
//! * `l_r = sum_d psi(d, a(r,d))` with `psi = -(x - c)^2 / (2 sigma^2)`, giving
//!   `dpsi/dc = (x - c) / sigma^2` and `dpsi/dsigma = (x - c)^2 / sigma^3`
//! * `sigma = SIGMA_MIN + softplus(rho)`, so `dsigma/drho = logistic(rho)`.

use crate::error::{Error, Result};
use crate::fuzzy::{check_input, log_sum_exp, logistic, FuzzyClassifier, Workspace};

pub(crate) fn check_batch(model: &FuzzyClassifier, x: &[f64], labels: &[usize]) -> Result<()> {
    let d = model.num_inputs();
    if labels.is_empty() {
        return Err(Error::Data("empty batch".into()));
    }
    if x.len() != labels.len() * d {
        return Err(Error::Shape(format!(
            "batch has {} values for {} labels of dimension {d}",
            x.len(),
            labels.len()
        )));
    }
    let c = model.num_classes();
    if let Some(&bad) = labels.iter().find(|&&l| l >= c) {
        return Err(Error::Data(format!(
            "label {bad} out of range for {c} classes"
        )));
    }
    Ok(())
}

/// Mean cross-entropy of the model over a row-major batch.
pub fn batch_loss(model: &FuzzyClassifier, x: &[f64], labels: &[usize]) -> Result<f64> {
    check_batch(model, x, labels)?;
    let d = model.num_inputs();
    let mut ws = Workspace::new(model);
    let mut total = 0.0;
    for (row, &y) in x.chunks_exact(d).zip(labels) {
        check_input(model, row)?;
        ws.run(model, row);
        total += log_sum_exp(&ws.logits) - ws.logits[y];
    }
    Ok(total / labels.len() as f64)
}

/// Mean cross-entropy and its gradient, laid out like [`FuzzyClassifier::params`].
pub fn loss_and_gradients(
    model: &FuzzyClassifier,
    x: &[f64],
    labels: &[usize],
) -> Result<(f64, Vec<f64>)> {
    check_batch(model, x, labels)?;
    let banks = model.banks();
    let rules = model.rules();
    let (d, m, r, c) = (
        model.num_inputs(),
        model.mfs_per_input(),
        model.num_rules(),
        model.num_classes(),
    );
    let dm = d * m;
    let scale = 1.0 / labels.len() as f64;

    let mut grad = vec![0.0; model.num_params()];
    let (grad_banks, grad_q) = grad.split_at_mut(2 * dm);
    let (grad_centers, grad_rho) = grad_banks.split_at_mut(dm);

    let mut ws = Workspace::new(model);
    let mut g_out = vec![0.0; c];
    let mut g_log_firing = vec![0.0; r];
    let mut g_psi = vec![0.0; dm];
    let mut loss = 0.0;

    for (row, &y) in x.chunks_exact(d).zip(labels) {
        check_input(model, row)?;
        ws.run(model, row);
        loss += log_sum_exp(&ws.logits) - ws.logits[y];

        for (k, g) in g_out.iter_mut().enumerate() {
            *g = (ws.probs[k] - if k == y { 1.0 } else { 0.0 }) * scale;
        }

        let mut mean_u = 0.0;
        for rule in 0..r {
            let wn = ws.firings[rule];
            let q = rules.consequent_row(rule);
            let gq = &mut grad_q[rule * c..(rule + 1) * c];
            let mut u = 0.0;
            for k in 0..c {
                gq[k] += wn * g_out[k];
                u += g_out[k] * q[k];
            }
            g_log_firing[rule] = u;
            mean_u += wn * u;
        }
        for (gl, &wn) in g_log_firing.iter_mut().zip(&ws.firings) {
            *gl = wn * (*gl - mean_u);
        }

        g_psi.iter_mut().for_each(|v| *v = 0.0);
        for (rule, &gl) in g_log_firing.iter().enumerate() {
            for (input, &a) in rules.antecedent_row(rule).iter().enumerate() {
                g_psi[input * m + a] += gl;
            }
        }

        for (input, &xv) in row.iter().enumerate() {
            for mf in 0..m {
                let k = input * m + mf;
                let gp = g_psi[k];
                if gp == 0.0 {
                    continue;
                }
                let sigma = ws.sigma[k];
                let diff = xv - banks.center(input, mf);
                let inv_s2 = 1.0 / (sigma * sigma);
                grad_centers[k] += gp * diff * inv_s2;
                grad_rho[k] +=
                    gp * diff * diff * inv_s2 / sigma * logistic(banks.width_param(input, mf));
            }
        }
    }

    loss *= scale;
    if !loss.is_finite() {
        return Err(Error::Numeric {
            location: "loss".into(),
            detail: format!("mean cross-entropy is {loss}"),
        });
    }
    if let Some(i) = grad.iter().position(|v| !v.is_finite()) {
        return Err(Error::Numeric {
            location: model.param_location(i),
            detail: format!("gradient is {}", grad[i]),
        });
    }
    Ok((loss, grad))
}

/// Gradient only; see [`loss_and_gradients`].
pub fn gradients(model: &FuzzyClassifier, x: &[f64], labels: &[usize]) -> Result<Vec<f64>> {
    loss_and_gradients(model, x, labels).map(|(_, g)| g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{
        forward, init_classifier, param_from_sigma, MembershipBank, ModelShape, RuleBase,
    };

    #[test]
    fn single_rule_softmax_gradient() {
        let banks =
            MembershipBank::new(1, 1, vec![0.5], vec![param_from_sigma(0.3).unwrap()]).unwrap();
        let rules = RuleBase::new(1, 1, 2, vec![0], vec![0.0, 0.0]).unwrap();
        let model = FuzzyClassifier::from_parts(banks, rules, 0).unwrap();
        let g = gradients(&model, &[0.2], &[0]).unwrap();
        // [center, rho, q00, q01]
        assert!((g[2] + 0.5).abs() < 1e-15);
        assert!((g[3] - 0.5).abs() < 1e-15);
        // One rule: normalized firing is constant, so MF parameters get nothing.
        assert_eq!(g[0], 0.0);
        assert_eq!(g[1], 0.0);
    }

    #[test]
    fn zero_consequent_closed_form() {
        let shape = ModelShape::new(2, 3, 3, 4);
        let model = init_classifier(shape, 5).unwrap();
        let x = [0.1, 0.9, 0.4, 0.4, 0.8, 0.2];
        let y = [0, 2, 1];
        let g = gradients(&model, &x, &y).unwrap();
        let offset = 2 * 2 * 3;
        let mut expected = vec![0.0; 4 * 3];
        for (row, &label) in x.chunks(2).zip(&y) {
            let f = forward(&model, row).unwrap();
            for r in 0..4 {
                for c in 0..3 {
                    let ind = if c == label { 1.0 } else { 0.0 };
                    expected[r * 3 + c] += f.firings[r] * (1.0 / 3.0 - ind) / 3.0;
                }
            }
        }
        for (got, want) in g[offset..].iter().zip(&expected) {
            assert!((got - want).abs() < 1e-15, "{got} vs {want}");
        }
    }

    #[test]
    fn batch_loss_matches_loss_and_gradients() {
        let model = crate::fuzzy::random_classifier(ModelShape::new(3, 3, 3, 5), 11).unwrap();
        let x: Vec<f64> = (0..24).map(|i| (i as f64 * 0.37).fract()).collect();
        let y: Vec<usize> = (0..8).map(|i| i % 3).collect();
        let (l, _) = loss_and_gradients(&model, &x, &y).unwrap();
        assert!((l - batch_loss(&model, &x, &y).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn batch_errors() {
        let model = init_classifier(ModelShape::new(2, 2, 2, 2), 0).unwrap();
        assert!(matches!(
            gradients(&model, &[0.1, 0.2], &[5]),
            Err(Error::Data(_))
        ));
        assert!(matches!(
            gradients(&model, &[0.1], &[0]),
            Err(Error::Shape(_))
        ));
        assert!(matches!(gradients(&model, &[], &[]), Err(Error::Data(_))));
    }
}
