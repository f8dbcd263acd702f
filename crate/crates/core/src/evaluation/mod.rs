//! Stratified k-fold cross-validation and the metric suite reported for
//! each classifier.
//!
//! Predictions from all held-out folds are pooled before any metric is
//! computed, so the confusion matrix covers every instance exactly once.
//! The cross-validation accuracy (CVA) is the plain average of the per-fold
//! accuracies.

mod folds;
mod metrics;
mod report;
mod roc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::{ClassifierSpec, Learner};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::seed::derive_seed;

pub use self::folds::{stratified_folds, FoldAssignment};
pub use self::metrics::{
    confusion_metrics, error_measures, ConfusionMatrix, ConfusionMetrics, ErrorMeasureInput,
    ErrorMeasures,
};
pub use self::report::{csv_table, markdown_table, MetricRow, METRIC_LABELS};
pub use self::roc::{roc_auc, RocCurve};

/// The eleven summary measures, in percent. Class-dependent rates are
/// averages over both classes weighted by class frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryMetrics {
    pub correctly_classified: f64,
    pub mean_absolute_error: f64,
    pub root_mean_squared_error: f64,
    pub relative_absolute_error: Option<f64>,
    pub root_relative_squared_error: Option<f64>,
    pub tp_rate: f64,
    pub fp_rate: f64,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    pub roc_area: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub class: String,
    pub instances: usize,
    pub tp_rate: f64,
    pub fp_rate: f64,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    pub roc_area: Option<f64>,
    pub precision_undefined: bool,
}

/// Cross-validated evaluation of one classifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub classifier: String,
    pub display_name: String,
    pub instances: usize,
    pub folds: usize,
    pub positive_class: String,
    pub metrics: SummaryMetrics,
    pub per_class: Vec<ClassMetrics>,
    /// Matrix with `positive_class` as positive.
    pub confusion: ConfusionMatrix,
    pub positive_class_metrics: ConfusionMetrics,
    pub fold_accuracies: Vec<f64>,
    pub cva: f64,
}

/// Transformation applied to each training split before fitting, e.g.
/// within-fold resampling. Receives the split and its fold id.
pub type TrainTransform<'a> = dyn Fn(&Dataset, usize) -> Result<Dataset> + Sync + 'a;

pub struct CvOptions<'a> {
    /// Class index treated as positive in the confusion matrix.
    pub positive: usize,
    /// Master seed; fold `f` trains with `derive_seed(seed, "train/<id>", f)`.
    pub seed: u64,
    pub train_transform: Option<&'a TrainTransform<'a>>,
}

/// Held-out class distributions for every instance, in dataset order.
/// Test indices of one fold with their predicted distributions.
type FoldPredictions = (Vec<usize>, Vec<Vec<f64>>);

pub fn cross_val_predict(
    d: &Dataset,
    learner: &dyn Learner,
    stream: &str,
    folds: &FoldAssignment,
    opts: &CvOptions<'_>,
) -> Result<Vec<Vec<f64>>> {
    if folds.fold_of.len() != d.len() {
        return Err(Error::Config(format!(
            "fold assignment covers {} instances, dataset has {}",
            folds.fold_of.len(),
            d.len()
        )));
    }
    let per_fold: Vec<Result<FoldPredictions>> = (0..folds.k)
        .into_par_iter()
        .map(|f| {
            let test = folds.test_indices(f);
            let mut train = d.subset(&folds.train_indices(f));
            if let Some(transform) = opts.train_transform {
                train = transform(&train, f)?;
            }
            let seed = derive_seed(opts.seed, &format!("train/{stream}"), f as u64);
            let model = learner.fit(&train, seed)?;
            let probs = test
                .iter()
                .map(|&i| model.predict_proba(&d.instances()[i]))
                .collect();
            Ok((test, probs))
        })
        .collect();

    let mut pooled = vec![Vec::new(); d.len()];
    for (f, result) in per_fold.into_iter().enumerate() {
        let (test, probs) = result.map_err(|e| Error::Fold {
            fold: f,
            source: Box::new(e),
        })?;
        for (i, p) in test.into_iter().zip(probs) {
            pooled[i] = p;
        }
    }
    Ok(pooled)
}

pub fn cross_validate(
    d: &Dataset,
    spec: &ClassifierSpec,
    folds: &FoldAssignment,
    opts: &CvOptions<'_>,
) -> Result<EvaluationReport> {
    let probs = cross_val_predict(d, spec, spec.id(), folds, opts)?;
    let mut report = evaluate_predictions(d, &probs, folds, opts.positive)?;
    report.classifier = spec.id().to_string();
    report.display_name = spec.display_name().to_string();
    Ok(report)
}

/// Builds the report from pooled held-out predictions.
pub fn evaluate_predictions(
    d: &Dataset,
    probs: &[Vec<f64>],
    folds: &FoldAssignment,
    positive: usize,
) -> Result<EvaluationReport> {
    let k = d.num_classes();
    if positive >= k {
        return Err(Error::Config(format!(
            "positive class index {positive} out of range"
        )));
    }
    let labels = d.labels();
    let predicted: Vec<usize> = probs.iter().map(|p| crate::argmax(p)).collect();
    let n = labels.len();

    let mut per_class = Vec::with_capacity(k);
    for c in 0..k {
        let m = confusion_metrics(&ConfusionMatrix::from_labels(&labels, &predicted, c));
        let scores: Vec<f64> = probs.iter().map(|p| p[c]).collect();
        let truth: Vec<bool> = labels.iter().map(|&l| l == c).collect();
        per_class.push(ClassMetrics {
            class: d.schema().class_values()[c].clone(),
            instances: truth.iter().filter(|&&t| t).count(),
            tp_rate: m.tp_rate,
            fp_rate: m.fp_rate,
            precision: m.precision,
            recall: m.recall,
            f_measure: m.f_measure,
            roc_area: roc_auc(&scores, &truth).ok().map(|r| 100.0 * r.auc),
            precision_undefined: m.precision_undefined,
        });
    }

    let weighted = |f: &dyn Fn(&ClassMetrics) -> f64| -> f64 {
        per_class
            .iter()
            .map(|c| c.instances as f64 * f(c))
            .sum::<f64>()
            / n as f64
    };
    let roc_area = {
        let defined: Vec<&ClassMetrics> =
            per_class.iter().filter(|c| c.roc_area.is_some()).collect();
        let mass: usize = defined.iter().map(|c| c.instances).sum();
        (mass > 0).then(|| {
            defined
                .iter()
                .map(|c| c.instances as f64 * c.roc_area.unwrap())
                .sum::<f64>()
                / mass as f64
        })
    };

    let errors = error_measures(&ErrorMeasureInput::from_labels(probs.to_vec(), &labels, k))?;
    let confusion = ConfusionMatrix::from_labels(&labels, &predicted, positive);
    let positive_class_metrics = confusion_metrics(&confusion);

    let mut fold_correct = vec![0usize; folds.k];
    for i in 0..n {
        if predicted[i] == labels[i] {
            fold_correct[folds.fold_of[i]] += 1;
        }
    }
    let fold_accuracies: Vec<f64> = fold_correct
        .iter()
        .zip(folds.fold_sizes())
        .map(|(&c, size)| {
            if size == 0 {
                0.0
            } else {
                100.0 * c as f64 / size as f64
            }
        })
        .collect();
    let cva = fold_accuracies.iter().sum::<f64>() / folds.k as f64;

    let metrics = SummaryMetrics {
        correctly_classified: positive_class_metrics.accuracy,
        mean_absolute_error: errors.mae,
        root_mean_squared_error: errors.rmse,
        relative_absolute_error: errors.rae,
        root_relative_squared_error: errors.rrse,
        tp_rate: weighted(&|c| c.tp_rate),
        fp_rate: weighted(&|c| c.fp_rate),
        precision: weighted(&|c| c.precision),
        recall: weighted(&|c| c.recall),
        f_measure: weighted(&|c| c.f_measure),
        roc_area,
    };

    Ok(EvaluationReport {
        classifier: String::new(),
        display_name: String::new(),
        instances: n,
        folds: folds.k,
        positive_class: d.schema().class_values()[positive].clone(),
        metrics,
        per_class,
        confusion,
        positive_class_metrics,
        fold_accuracies,
        cva,
    })
}
