//! Benchmark harness for post-operative life-expectancy classification.
//!
//! The crate covers the full experimental pipeline: reading the
//! thoracic-surgery decision table ([`dataset`]), rebalancing it
//! ([`resampling`]), three classifiers written from scratch ([`mlp`],
//! [`decision_tree`], [`naive_bayes`]) and stratified cross-validated
//! evaluation with the usual confusion-matrix, error and ROC measures
//! ([`evaluation`]).

pub mod classifier;
pub mod dataset;
pub mod decision_tree;
pub mod error;
pub mod evaluation;
pub mod mlp;
pub mod naive_bayes;
pub mod resampling;
pub mod seed;

pub use classifier::{ClassifierSpec, Learner, Predictor};
pub use dataset::{
    Attribute, AttributeKind, ClassCounts, Dataset, ImputeStrategy, Instance, Role, Schema, Value,
};
pub use error::{Error, Result};
pub use evaluation::{ConfusionMatrix, EvaluationReport, FoldAssignment, RocCurve};

/// Index of the largest entry; ties go to the lowest index.
pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}
