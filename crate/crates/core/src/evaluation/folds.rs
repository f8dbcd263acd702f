use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::seed::rng_from_seed;

/// Assignment of every instance to one of `k` folds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldAssignment {
    pub k: usize,
    pub fold_of: Vec<usize>,
    pub seed: u64,
}

impl FoldAssignment {
    pub fn test_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.fold_of.len())
            .filter(|&i| self.fold_of[i] == fold)
            .collect()
    }

    pub fn train_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.fold_of.len())
            .filter(|&i| self.fold_of[i] != fold)
            .collect()
    }

    pub fn fold_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &f in &self.fold_of {
            sizes[f] += 1;
        }
        sizes
    }

    /// `counts[fold][class]` for the given labels.
    pub fn class_counts(&self, labels: &[usize], num_classes: usize) -> Vec<Vec<usize>> {
        let mut counts = vec![vec![0; num_classes]; self.k];
        for (&f, &c) in self.fold_of.iter().zip(labels) {
            counts[f][c] += 1;
        }
        counts
    }
}

/// Stratified assignment: the members of each class are shuffled and dealt
/// round-robin to the folds. Dealing continues from where the previous class
/// stopped, so fold sizes also differ by at most one.
pub fn stratified_folds(d: &Dataset, k: usize, seed: u64) -> Result<FoldAssignment> {
    if k < 2 || k > d.len() {
        return Err(Error::Config(format!(
            "fold count must lie in [2, {}], got {k}",
            d.len()
        )));
    }
    let labels = d.labels();
    let mut rng = rng_from_seed(seed);
    let mut fold_of = vec![0; d.len()];
    let mut next = 0;
    for class in 0..d.num_classes() {
        let mut members: Vec<usize> = (0..d.len()).filter(|&i| labels[i] == class).collect();
        members.shuffle(&mut rng);
        for i in members {
            fold_of[i] = next;
            next = (next + 1) % k;
        }
    }
    Ok(FoldAssignment { k, fold_of, seed })
}
