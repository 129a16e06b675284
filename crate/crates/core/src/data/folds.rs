use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fold {
    pub train: Vec<usize>,
    pub validation: Vec<usize>,
}

/// Stratified k-fold assignment of row indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldPlan {
    pub k: usize,
    pub seed: u64,
    pub folds: Vec<Fold>,
}

/// Shuffle each class's rows with a seeded generator, then deal all rows
/// round-robin into `k` folds, class by class, with the dealing position
/// carried across classes. Per-class fold counts differ by at most one and
/// fold sizes by at most one.
pub fn stratified_kfold(labels: &[usize], k: usize, seed: u64) -> Result<FoldPlan> {
    if k < 2 {
        return Err(Error::Config(format!("k must be at least 2, got {k}")));
    }
    if k > labels.len() {
        return Err(Error::Config(format!(
            "k = {k} exceeds the {} available rows",
            labels.len()
        )));
    }
    let num_classes = labels.iter().max().map_or(0, |&m| m + 1);
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); num_classes];
    for (i, &l) in labels.iter().enumerate() {
        by_class[l].push(i);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![Vec::new(); k];
    let mut next = 0;
    for members in &mut by_class {
        members.shuffle(&mut rng);
        for &i in members.iter() {
            assignment[next].push(i);
            next = (next + 1) % k;
        }
    }

    let folds = assignment
        .into_iter()
        .map(|mut validation| {
            validation.sort_unstable();
            let mut in_val = vec![false; labels.len()];
            validation.iter().for_each(|&i| in_val[i] = true);
            let train = (0..labels.len()).filter(|&i| !in_val[i]).collect();
            Fold { train, validation }
        })
        .collect();
    Ok(FoldPlan { k, seed, folds })
}
