//! Naive Bayes over mixed attributes.
//!
//! The posterior of class `c` given instance `x` is proportional to
//! `p(c) · Π_j p(x_j | c)`. Priors and nominal conditionals use add-one
//! smoothing; numeric conditionals are Gaussian with a floored variance.
//! All products are evaluated as sums of logarithms.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::classifier::Predictor;
use crate::dataset::{AttributeKind, Dataset, Instance, Value};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NaiveBayesConfig {
    /// Lower bound for Gaussian variances, relative to the attribute's
    /// min-max normalized scale: the effective floor is
    /// `variance_floor · (max − min)²` over the training data.
    pub variance_floor: f64,
}

impl Default for NaiveBayesConfig {
    fn default() -> Self {
        NaiveBayesConfig {
            variance_floor: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Gaussian {
    pub mean: f64,
    pub variance: f64,
}

impl Gaussian {
    fn ln_pdf(&self, x: f64) -> f64 {
        let d = x - self.mean;
        -0.5 * (2.0 * PI * self.variance).ln() - d * d / (2.0 * self.variance)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum AttributeModel {
    /// `table[c][v] = p(value v | class c)`.
    Nominal { name: String, table: Vec<Vec<f64>> },
    /// One Gaussian per class.
    Gaussian { name: String, params: Vec<Gaussian> },
    /// The class attribute itself.
    Class,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NaiveBayesModel {
    pub classes: Vec<String>,
    pub priors: Vec<f64>,
    pub attributes: Vec<AttributeModel>,
}

/// Mean and population variance; `None` for an empty sample.
fn moments(xs: &[f64]) -> Option<(f64, f64)> {
    if xs.is_empty() {
        return None;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    Some((mean, var))
}

impl NaiveBayesModel {
    pub fn train(d: &Dataset, cfg: &NaiveBayesConfig) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if cfg.variance_floor.is_nan() || cfg.variance_floor <= 0.0 {
            return Err(Error::Config("variance floor must be positive".into()));
        }
        let k = d.num_classes();
        let labels = d.labels();
        let mut class_counts = vec![0usize; k];
        for &c in &labels {
            class_counts[c] += 1;
        }
        let n = d.len() as f64;
        let priors = class_counts
            .iter()
            .map(|&c| (c as f64 + 1.0) / (n + k as f64))
            .collect();

        let attributes = d
            .attributes()
            .iter()
            .enumerate()
            .map(|(a, attr)| {
                if a == d.class_index() {
                    return AttributeModel::Class;
                }
                match &attr.kind {
                    AttributeKind::Nominal(domain) => {
                        let mut counts = vec![vec![0usize; domain.len()]; k];
                        let mut seen = vec![0usize; k];
                        for (inst, &c) in d.instances().iter().zip(&labels) {
                            if let Value::Symbol(v) = inst.value(a) {
                                counts[c][v] += 1;
                                seen[c] += 1;
                            }
                        }
                        let table = counts
                            .iter()
                            .zip(&seen)
                            .map(|(row, &total)| {
                                row.iter()
                                    .map(|&cnt| {
                                        (cnt as f64 + 1.0) / (total as f64 + domain.len() as f64)
                                    })
                                    .collect()
                            })
                            .collect();
                        AttributeModel::Nominal {
                            name: attr.name.clone(),
                            table,
                        }
                    }
                    AttributeKind::Numeric => {
                        let mut by_class: Vec<Vec<f64>> = vec![Vec::new(); k];
                        let mut all = Vec::new();
                        for (inst, &c) in d.instances().iter().zip(&labels) {
                            if let Value::Real(x) = inst.value(a) {
                                by_class[c].push(x);
                                all.push(x);
                            }
                        }
                        // A class without observations borrows the pooled
                        // estimate so its likelihood stays finite.
                        let pooled = moments(&all).unwrap_or((0.0, 1.0));
                        let (lo, hi) = all
                            .iter()
                            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
                                (lo.min(x), hi.max(x))
                            });
                        let range = if hi > lo { hi - lo } else { 1.0 };
                        let floor = cfg.variance_floor * range * range;
                        let params = by_class
                            .iter()
                            .map(|xs| {
                                let (mean, var) = moments(xs).unwrap_or(pooled);
                                Gaussian {
                                    mean,
                                    variance: var.max(floor),
                                }
                            })
                            .collect();
                        AttributeModel::Gaussian {
                            name: attr.name.clone(),
                            params,
                        }
                    }
                }
            })
            .collect();

        Ok(NaiveBayesModel {
            classes: d.schema().class_values().to_vec(),
            priors,
            attributes,
        })
    }

    /// Unnormalized log posterior per class.
    pub fn log_joint(&self, x: &Instance) -> Vec<f64> {
        (0..self.classes.len())
            .map(|c| {
                let mut lp = self.priors[c].ln();
                for (model, value) in self.attributes.iter().zip(x.values()) {
                    lp += match (model, value) {
                        (AttributeModel::Nominal { table, .. }, Value::Symbol(v)) => {
                            table[c][*v].ln()
                        }
                        (AttributeModel::Gaussian { params, .. }, Value::Real(v)) => {
                            params[c].ln_pdf(*v)
                        }
                        _ => 0.0,
                    };
                }
                lp
            })
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Exponentiates and normalizes log weights, shifting by the maximum first.
/// If every weight underflowed to −∞ the classes are indistinguishable and
/// the result is uniform.
pub(crate) fn normalize_log(log_weights: &[f64]) -> Vec<f64> {
    let max = log_weights
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return vec![1.0 / log_weights.len() as f64; log_weights.len()];
    }
    let weights: Vec<f64> = log_weights.iter().map(|&l| (l - max).exp()).collect();
    let total: f64 = weights.iter().sum();
    weights.iter().map(|w| w / total).collect()
}

impl Predictor for NaiveBayesModel {
    fn predict_proba(&self, x: &Instance) -> Vec<f64> {
        normalize_log(&self.log_joint(x))
    }
}
