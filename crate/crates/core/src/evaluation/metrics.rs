//! Confusion-matrix rates and probabilistic error measures. Everything is
//! reported in percent.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
}

impl ConfusionMatrix {
    /// One-vs-rest matrix for class `positive`.
    pub fn from_labels(actual: &[usize], predicted: &[usize], positive: usize) -> Self {
        let mut m = ConfusionMatrix::default();
        for (&a, &p) in actual.iter().zip(predicted) {
            match (a == positive, p == positive) {
                (true, true) => m.tp += 1,
                (false, true) => m.fp += 1,
                (false, false) => m.tn += 1,
                (true, false) => m.fn_ += 1,
            }
        }
        m
    }

    pub fn total(&self) -> usize {
        self.tp + self.fp + self.tn + self.fn_
    }

    /// The same outcomes seen with the other class as positive.
    pub fn swapped(&self) -> Self {
        ConfusionMatrix {
            tp: self.tn,
            fp: self.fn_,
            tn: self.tp,
            fn_: self.fp,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfusionMetrics {
    pub accuracy: f64,
    pub sensitivity: f64,
    pub specificity: f64,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    pub tp_rate: f64,
    pub fp_rate: f64,
    /// Set when no instance was predicted positive; `precision` is then 0.
    pub precision_undefined: bool,
}

fn pct(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        100.0 * num as f64 / den as f64
    }
}

/// Rates of a confusion matrix. Zero denominators yield 0.
pub fn confusion_metrics(c: &ConfusionMatrix) -> ConfusionMetrics {
    let sensitivity = pct(c.tp, c.tp + c.fn_);
    let precision = pct(c.tp, c.tp + c.fp);
    let f_measure = if precision + sensitivity > 0.0 {
        2.0 * precision * sensitivity / (precision + sensitivity)
    } else {
        0.0
    };
    ConfusionMetrics {
        accuracy: pct(c.tp + c.tn, c.total()),
        sensitivity,
        specificity: pct(c.tn, c.tn + c.fp),
        precision,
        recall: sensitivity,
        f_measure,
        tp_rate: sensitivity,
        fp_rate: pct(c.fp, c.fp + c.tn),
        precision_undefined: c.tp + c.fp == 0,
    }
}

/// Predicted class distributions paired with one-hot actual vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorMeasureInput {
    pub predicted: Vec<Vec<f64>>,
    pub actual: Vec<Vec<f64>>,
}

impl ErrorMeasureInput {
    pub fn from_labels(predicted: Vec<Vec<f64>>, labels: &[usize], num_classes: usize) -> Self {
        let actual = labels
            .iter()
            .map(|&c| {
                (0..num_classes)
                    .map(|k| if k == c { 1.0 } else { 0.0 })
                    .collect()
            })
            .collect();
        ErrorMeasureInput { predicted, actual }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorMeasures {
    pub mae: f64,
    pub rmse: f64,
    /// `None` when every actual vector is identical.
    pub rae: Option<f64>,
    pub rrse: Option<f64>,
}

/// Every class dimension of every instance contributes one (p, a) pair. The
/// relative measures normalize by a predictor that always outputs the mean
/// actual vector.
pub fn error_measures(e: &ErrorMeasureInput) -> Result<ErrorMeasures> {
    let n = e.actual.len();
    if n == 0 || e.predicted.len() != n {
        return Err(Error::Config(format!(
            "error measures need matching non-empty inputs ({} predictions, {n} actuals)",
            e.predicted.len()
        )));
    }
    let dims = e.actual[0].len();
    let mut mean = vec![0.0; dims];
    for a in &e.actual {
        for (m, v) in mean.iter_mut().zip(a) {
            *m += v;
        }
    }
    for m in &mut mean {
        *m /= n as f64;
    }

    let (mut abs, mut sq, mut base_abs, mut base_sq) = (0.0, 0.0, 0.0, 0.0);
    for (p, a) in e.predicted.iter().zip(&e.actual) {
        for k in 0..dims {
            let err = p[k] - a[k];
            abs += err.abs();
            sq += err * err;
            let dev = a[k] - mean[k];
            base_abs += dev.abs();
            base_sq += dev * dev;
        }
    }
    let pairs = (n * dims) as f64;
    Ok(ErrorMeasures {
        mae: 100.0 * abs / pairs,
        rmse: 100.0 * (sq / pairs).sqrt(),
        rae: (base_abs > 0.0).then(|| 100.0 * abs / base_abs),
        rrse: (base_sq > 0.0).then(|| 100.0 * (sq / base_sq).sqrt()),
    })
}
