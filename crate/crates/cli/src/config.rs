use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thorax_core::{ClassifierSpec, ImputeStrategy};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum DataFormat {
    Arff,
    Csv,
}

impl DataFormat {
    pub fn extension(self) -> &'static str {
        match self {
            DataFormat::Arff => "arff",
            DataFormat::Csv => "csv",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Markdown,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoteSettings {
    pub enabled: bool,
    pub percent: u32,
    pub k_neighbors: usize,
    /// Reach `percent` by repeated 100% rounds instead of one application.
    pub repeat: bool,
    /// Oversample only the training part of each fold.
    pub within_folds: bool,
}

impl Default for SmoteSettings {
    fn default() -> Self {
        SmoteSettings {
            enabled: true,
            percent: 700,
            k_neighbors: 5,
            repeat: false,
            within_folds: false,
        }
    }
}

/// Everything that determines a run. Serialized into the manifest so a run
/// can be repeated from it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub data: PathBuf,
    pub format: DataFormat,
    /// ARFF file whose header gives the schema of CSV input. Without it the
    /// thoracic-surgery schema is assumed.
    pub schema: Option<PathBuf>,
    /// Class attribute; the last declared attribute when absent.
    pub class_attribute: Option<String>,
    pub positive_class: String,
    pub seed: u64,
    pub folds: usize,
    pub smote: SmoteSettings,
    pub impute: Option<ImputeStrategy>,
    pub classifiers: Vec<ClassifierSpec>,
    pub output_format: OutputFormat,
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        if self.folds < 2 {
            return Err(CliError::Usage(format!(
                "--folds must be at least 2, got {}",
                self.folds
            )));
        }
        if self.classifiers.is_empty() {
            return Err(CliError::Usage("no classifier selected".into()));
        }
        let s = &self.smote;
        if s.enabled {
            if s.k_neighbors == 0 {
                return Err(CliError::Usage("--smote-k must be at least 1".into()));
            }
            if !s.percent.is_multiple_of(100) {
                return Err(CliError::Usage(format!(
                    "--smote-percent must be a multiple of 100, got {}",
                    s.percent
                )));
            }
            if s.repeat && thorax_core::resampling::doubling_rounds(s.percent).is_none() {
                return Err(CliError::Usage(format!(
                    "--smote-repeat needs 1 + percent/100 to be a power of two, got percent {}",
                    s.percent
                )));
            }
        }
        for c in &self.classifiers {
            let check = match c {
                ClassifierSpec::Mlp(m) => m.validate(),
                ClassifierSpec::J48(t) => t.validate(),
                ClassifierSpec::Nb(n) if n.variance_floor.is_nan() || n.variance_floor <= 0.0 => {
                    Err(thorax_core::Error::Config(
                        "--nb-variance-floor must be positive".into(),
                    ))
                }
                ClassifierSpec::Nb(_) => Ok(()),
            };
            check.map_err(|e| CliError::Usage(format!("{}: {e}", c.id())))?;
        }
        Ok(())
    }
}
