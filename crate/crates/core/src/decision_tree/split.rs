//! Split scoring by gain ratio, entropies in bits.

use serde::{Deserialize, Serialize};

use crate::dataset::{AttributeKind, Dataset, Value};
use crate::error::{Error, Result};

pub(crate) fn entropy(counts: &[usize]) -> f64 {
    let total: usize = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let n = total as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum()
}

/// Information gain of a partition given per-branch class counts.
fn gain_of(parent: &[usize], branches: &[Vec<usize>]) -> f64 {
    let n: usize = parent.iter().sum();
    let n = n as f64;
    let remainder: f64 = branches
        .iter()
        .map(|b| b.iter().sum::<usize>() as f64 / n * entropy(b))
        .sum();
    entropy(parent) - remainder
}

/// Gains closer than this are treated as equal.
pub(crate) const GAIN_TIE: f64 = 1e-12;

fn split_info(sizes: &[usize]) -> f64 {
    entropy(sizes)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SplitScore {
    /// The attribute cannot partition the data (zero split information, or
    /// no admissible threshold).
    NotSplittable,
    Split {
        gain: f64,
        split_info: f64,
        ratio: f64,
        /// Chosen threshold for numeric attributes.
        threshold: Option<f64>,
    },
}

impl SplitScore {
    pub fn ratio(&self) -> Option<f64> {
        match *self {
            SplitScore::Split { ratio, .. } => Some(ratio),
            SplitScore::NotSplittable => None,
        }
    }
}

/// Gain ratio of `attribute` over the whole dataset. For numeric attributes
/// the threshold maximizing information gain is used.
pub fn gain_ratio(d: &Dataset, attribute: usize) -> Result<SplitScore> {
    if attribute == d.class_index() {
        return Err(Error::Config(format!(
            "`{}` is the class attribute and cannot be a split candidate",
            d.attributes()[attribute].name
        )));
    }
    if attribute >= d.attributes().len() {
        return Err(Error::Config(format!(
            "attribute index {attribute} out of range"
        )));
    }
    let labels = d.labels();
    let all: Vec<usize> = (0..d.len()).collect();
    Ok(score(d, &labels, &all, attribute, 1))
}

/// Scores one candidate on the instances `idx`. Every admissible split must
/// leave at least two branches with `min_leaf` or more instances.
pub(crate) fn score(
    d: &Dataset,
    labels: &[usize],
    idx: &[usize],
    attribute: usize,
    min_leaf: usize,
) -> SplitScore {
    let k = d.num_classes();
    let mut parent = vec![0usize; k];
    for &i in idx {
        parent[labels[i]] += 1;
    }
    match &d.attributes()[attribute].kind {
        AttributeKind::Nominal(domain) => {
            let mut branches = vec![vec![0usize; k]; domain.len()];
            for &i in idx {
                if let Value::Symbol(v) = d.instances()[i].value(attribute) {
                    branches[v][labels[i]] += 1;
                }
            }
            let sizes: Vec<usize> = branches.iter().map(|b| b.iter().sum()).collect();
            if sizes.iter().filter(|&&s| s >= min_leaf.max(1)).count() < 2 {
                return SplitScore::NotSplittable;
            }
            let si = split_info(&sizes);
            if si <= 0.0 {
                return SplitScore::NotSplittable;
            }
            let gain = gain_of(&parent, &branches);
            SplitScore::Split {
                gain,
                split_info: si,
                ratio: gain / si,
                threshold: None,
            }
        }
        AttributeKind::Numeric => {
            let mut pts: Vec<(f64, usize)> = idx
                .iter()
                .filter_map(|&i| {
                    d.instances()[i]
                        .value(attribute)
                        .as_real()
                        .map(|x| (x, labels[i]))
                })
                .collect();
            pts.sort_by(|a, b| a.0.total_cmp(&b.0));
            let n = pts.len();
            let min_leaf = min_leaf.max(1);
            let mut left = vec![0usize; k];
            let mut right = parent.clone();
            let mut best: Option<(f64, usize)> = None;
            for cut in 1..n {
                let (x, c) = pts[cut - 1];
                left[c] += 1;
                right[c] -= 1;
                if x == pts[cut].0 || cut < min_leaf || n - cut < min_leaf {
                    continue;
                }
                let gain = gain_of(&parent, &[left.clone(), right.clone()]);
                // Equal gains (up to rounding) keep the lower threshold.
                if best.is_none_or(|(g, _)| gain > g + GAIN_TIE) {
                    best = Some((gain, cut));
                }
            }
            let Some((gain, cut)) = best else {
                return SplitScore::NotSplittable;
            };
            let si = split_info(&[cut, n - cut]);
            SplitScore::Split {
                gain,
                split_info: si,
                ratio: gain / si,
                threshold: Some((pts[cut - 1].0 + pts[cut].0) / 2.0),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{Attribute, Instance, Schema};

    fn data(rows: &[(usize, f64, usize)]) -> Dataset {
        let schema = Schema::new(
            "t",
            vec![
                Attribute::nominal("a", ["y", "n", "m"]),
                Attribute::numeric("x"),
                Attribute::nominal("c", ["T", "F"]),
            ],
        )
        .unwrap();
        Dataset::new(
            schema,
            rows.iter()
                .map(|&(a, x, c)| {
                    Instance::new(vec![Value::Symbol(a), Value::Real(x), Value::Symbol(c)])
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn perfect_binary_predictor() {
        let d = data(&[(0, 1.0, 0), (0, 2.0, 0), (1, 3.0, 1), (1, 4.0, 1)]);
        let s = gain_ratio(&d, 0).unwrap();
        assert_eq!(s.ratio(), Some(1.0));
        match gain_ratio(&d, 1).unwrap() {
            SplitScore::Split {
                ratio, threshold, ..
            } => {
                assert_eq!(ratio, 1.0);
                assert_eq!(threshold, Some(2.5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn constant_attribute_not_splittable() {
        let d = data(&[(2, 5.0, 0), (2, 5.0, 1), (2, 5.0, 1)]);
        assert_eq!(gain_ratio(&d, 0).unwrap(), SplitScore::NotSplittable);
        assert_eq!(gain_ratio(&d, 1).unwrap(), SplitScore::NotSplittable);
    }

    #[test]
    fn class_attribute_rejected() {
        let d = data(&[(0, 1.0, 0)]);
        assert!(gain_ratio(&d, 2).is_err());
    }

    #[test]
    fn entropy_in_bits() {
        assert_eq!(entropy(&[1, 1]), 1.0);
        assert_eq!(entropy(&[4, 0]), 0.0);
        assert!((entropy(&[1, 1, 1, 1]) - 2.0).abs() < 1e-15);
    }
}
