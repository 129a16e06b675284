use crate::error::{Error, Result};
use crate::fuzzy::log_sum_exp;

fn check_rows(len: usize, labels: &[usize], num_classes: usize, what: &str) -> Result<()> {
    if num_classes == 0 || len != labels.len() * num_classes {
        return Err(Error::Shape(format!(
            "{what} has {len} entries, expected {} rows of {num_classes}",
            labels.len()
        )));
    }
    if labels.is_empty() {
        return Err(Error::Data("empty batch".into()));
    }
    if let Some(&bad) = labels.iter().find(|&&l| l >= num_classes) {
        return Err(Error::Data(format!(
            "label {bad} out of range for {num_classes} classes"
        )));
    }
    Ok(())
}

/// Mean of `-ln p[label]` over a row-major `batch x C` probability matrix.
pub fn cross_entropy_loss(probs: &[f64], labels: &[usize], num_classes: usize) -> Result<f64> {
    check_rows(probs.len(), labels, num_classes, "probability matrix")?;
    let total: f64 = probs
        .chunks_exact(num_classes)
        .zip(labels)
        .map(|(p, &y)| -p[y].ln())
        .sum();
    Ok(total / labels.len() as f64)
}

/// Same loss from pre-softmax logits, `lse(z) - z[label]` per row.
pub fn cross_entropy_from_logits(
    logits: &[f64],
    labels: &[usize],
    num_classes: usize,
) -> Result<f64> {
    check_rows(logits.len(), labels, num_classes, "logit matrix")?;
    let total: f64 = logits
        .chunks_exact(num_classes)
        .zip(labels)
        .map(|(z, &y)| log_sum_exp(z) - z[y])
        .sum();
    Ok(total / labels.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        let uniform = [1.0 / 3.0; 3];
        let l = cross_entropy_loss(&uniform, &[1], 3).unwrap();
        assert!((l - 3f64.ln()).abs() < 1e-12);
        assert!((l - 1.098612).abs() < 1e-6);
        assert_eq!(cross_entropy_loss(&[0.0, 1.0], &[1], 2).unwrap(), 0.0);
        let half = cross_entropy_loss(&[0.5, 0.5], &[0], 2).unwrap();
        assert!((half - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn logits_form_agrees_and_is_stable() {
        let z = [2.0, -1.0, 0.5, 0.0, 0.0, 0.0];
        let p: Vec<f64> = z.chunks(3).flat_map(crate::fuzzy::softmax).collect();
        let a = cross_entropy_loss(&p, &[0, 2], 3).unwrap();
        let b = cross_entropy_from_logits(&z, &[0, 2], 3).unwrap();
        assert!((a - b).abs() < 1e-12);
        let big = cross_entropy_from_logits(&[1000.0, 0.0], &[1], 2).unwrap();
        assert!((big - 1000.0).abs() < 1e-9);
    }

    #[test]
    fn label_errors() {
        assert!(matches!(
            cross_entropy_loss(&[0.5, 0.5], &[2], 2),
            Err(Error::Data(_))
        ));
        assert!(matches!(
            cross_entropy_loss(&[0.5, 0.5, 1.0], &[0], 2),
            Err(Error::Shape(_))
        ));
    }
}
