//! The train/predict contract shared by the three classifiers, and the
//! serializable description of which classifier to run.

use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, Instance};
use crate::decision_tree::{DecisionTree, TreeConfig};
use crate::error::Result;
use crate::mlp::{MlpConfig, MlpModel};
use crate::naive_bayes::{NaiveBayesConfig, NaiveBayesModel};

/// A trained model. Returns one probability per class value, in class
/// declaration order, summing to one.
pub trait Predictor: Send + Sync {
    fn predict_proba(&self, x: &Instance) -> Vec<f64>;

    fn predict(&self, x: &Instance) -> usize {
        crate::argmax(&self.predict_proba(x))
    }
}

pub trait Learner: Send + Sync {
    /// `seed` drives any randomness in training. Deterministic learners
    /// ignore it.
    fn fit(&self, data: &Dataset, seed: u64) -> Result<Box<dyn Predictor>>;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ClassifierSpec {
    Mlp(MlpConfig),
    J48(TreeConfig),
    Nb(NaiveBayesConfig),
}

impl ClassifierSpec {
    /// Short identifier used on the command line.
    pub fn id(&self) -> &'static str {
        match self {
            ClassifierSpec::Mlp(_) => "mlp",
            ClassifierSpec::J48(_) => "j48",
            ClassifierSpec::Nb(_) => "nb",
        }
    }

    /// Column heading used in reports.
    pub fn display_name(&self) -> &'static str {
        match self {
            ClassifierSpec::Mlp(_) => "MLP",
            ClassifierSpec::J48(_) => "J48",
            ClassifierSpec::Nb(_) => "Naive Bayes",
        }
    }

    /// Default-configured classifier from its identifier.
    pub fn from_id(id: &str) -> Option<Self> {
        match id {
            "mlp" => Some(ClassifierSpec::Mlp(MlpConfig::default())),
            "j48" => Some(ClassifierSpec::J48(TreeConfig::default())),
            "nb" => Some(ClassifierSpec::Nb(NaiveBayesConfig::default())),
            _ => None,
        }
    }
}

impl Learner for ClassifierSpec {
    fn fit(&self, data: &Dataset, seed: u64) -> Result<Box<dyn Predictor>> {
        Ok(match self {
            ClassifierSpec::Mlp(cfg) => {
                let cfg = MlpConfig {
                    seed,
                    ..cfg.clone()
                };
                Box::new(MlpModel::train(data, &cfg)?)
            }
            ClassifierSpec::J48(cfg) => Box::new(DecisionTree::train(data, cfg)?),
            ClassifierSpec::Nb(cfg) => Box::new(NaiveBayesModel::train(data, cfg)?),
        })
    }
}
