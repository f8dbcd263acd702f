use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thorax_core::decision_tree::TreeConfig;
use thorax_core::mlp::MlpConfig;
use thorax_core::naive_bayes::NaiveBayesConfig;
use thorax_core::{ClassifierSpec, ImputeStrategy};

use crate::config::{DataFormat, OutputFormat, RunConfig, SmoteSettings};
use crate::error::{CliError, CliResult};

/// Directory holding `ThoraricSurgery.arff` when `--data` is not given.
pub const DATA_DIR_ENV: &str = "THORAX_DATA_DIR";
pub const DEFAULT_FILE: &str = "ThoraricSurgery.arff";

#[derive(Debug, Parser)]
#[command(
    name = "thorax",
    version,
    about = "Post-operative life expectancy classifier benchmark"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summarize a dataset: size, attribute kinds, class balance, missing values.
    Inspect(InputArgs),
    /// Write a SMOTE-resampled copy of a dataset plus a JSON record.
    Resample(ResampleArgs),
    /// Cross-validate the selected classifiers and write the report files.
    Bench(Box<BenchArgs>),
    /// Turn a run manifest into a metric × classifier CSV grid.
    Plotdata(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Impute {
    MeanOrMode,
    Drop,
}

impl From<Impute> for ImputeStrategy {
    fn from(i: Impute) -> Self {
        match i {
            Impute::MeanOrMode => ImputeStrategy::MeanOrMode,
            Impute::Drop => ImputeStrategy::DropInstance,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Input file [default: $THORAX_DATA_DIR/ThoraricSurgery.arff]
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Input format [default: from the file extension]
    #[arg(long, value_enum)]
    pub format: Option<DataFormat>,
    /// ARFF file whose header defines the columns of CSV input
    #[arg(long)]
    pub schema: Option<PathBuf>,
    /// Class attribute [default: last declared attribute]
    #[arg(long = "class")]
    pub class_attribute: Option<String>,
}

impl InputArgs {
    pub fn data_path(&self) -> CliResult<PathBuf> {
        if let Some(p) = &self.data {
            return Ok(p.clone());
        }
        match std::env::var_os(DATA_DIR_ENV) {
            Some(dir) => Ok(Path::new(&dir).join(DEFAULT_FILE)),
            None => Err(CliError::Usage(format!(
                "no --data given and {DATA_DIR_ENV} is not set"
            ))),
        }
    }

    pub fn data_format(&self, path: &Path) -> DataFormat {
        self.format
            .unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
                Some(e) if e.eq_ignore_ascii_case("csv") => DataFormat::Csv,
                _ => DataFormat::Arff,
            })
    }
}

#[derive(Debug, Clone, Args)]
pub struct SmoteArgs {
    /// Oversample the minority class with SMOTE
    #[arg(long, value_enum, default_value = "on")]
    pub smote: Switch,
    /// Synthetic instances per minority instance, in percent (multiple of 100)
    #[arg(long, default_value_t = 700)]
    pub smote_percent: u32,
    /// Nearest neighbours considered by SMOTE
    #[arg(long, default_value_t = 5)]
    pub smote_k: usize,
    /// Reach the percentage through repeated 100% rounds
    #[arg(long)]
    pub smote_repeat: bool,
    /// Oversample the training part of each fold instead of the whole dataset
    #[arg(long)]
    pub smote_within_folds: bool,
}

impl SmoteArgs {
    fn settings(&self) -> SmoteSettings {
        SmoteSettings {
            enabled: self.smote == Switch::On,
            percent: self.smote_percent,
            k_neighbors: self.smote_k,
            repeat: self.smote_repeat,
            within_folds: self.smote_within_folds,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ResampleArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub smote: SmoteArgs,
    /// Master seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum)]
    pub impute: Option<Impute>,
    /// Resampled dataset [default: resampled.<input extension>]
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// JSON resample record [default: <output>.record.json]
    #[arg(long)]
    pub record: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifierArgs {
    /// Comma-separated classifiers to evaluate
    #[arg(long, value_delimiter = ',', default_value = "mlp,j48,nb")]
    pub classifiers: Vec<String>,
    /// MLP hidden layer widths, comma-separated [default: (inputs + classes) / 2]
    #[arg(long, value_delimiter = ',')]
    pub mlp_hidden: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0.3)]
    pub mlp_learning_rate: f64,
    #[arg(long, default_value_t = 0.2)]
    pub mlp_momentum: f64,
    #[arg(long, default_value_t = 500)]
    pub mlp_epochs: usize,
    #[arg(long, default_value_t = 2)]
    pub j48_min_leaf: usize,
    #[arg(long, default_value_t = 0.25)]
    pub j48_confidence: f64,
    /// Skip pessimistic-error pruning
    #[arg(long)]
    pub j48_unpruned: bool,
    /// Gaussian variance floor, relative to the squared attribute range
    #[arg(long, default_value_t = 1e-6)]
    pub nb_variance_floor: f64,
}

impl ClassifierArgs {
    pub fn specs(&self) -> CliResult<Vec<ClassifierSpec>> {
        let mut out: Vec<ClassifierSpec> = Vec::new();
        for id in &self.classifiers {
            let spec = match id.trim() {
                "mlp" => ClassifierSpec::Mlp(MlpConfig {
                    hidden_sizes: self.mlp_hidden.clone(),
                    learning_rate: self.mlp_learning_rate,
                    momentum: self.mlp_momentum,
                    epochs: self.mlp_epochs,
                    ..MlpConfig::default()
                }),
                "j48" => ClassifierSpec::J48(TreeConfig {
                    min_leaf_instances: self.j48_min_leaf,
                    pruning_confidence: self.j48_confidence,
                    prune: !self.j48_unpruned,
                }),
                "nb" => ClassifierSpec::Nb(NaiveBayesConfig {
                    variance_floor: self.nb_variance_floor,
                }),
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown classifier `{other}` (expected mlp, j48 or nb)"
                    )))
                }
            };
            if out.iter().any(|s| s.id() == spec.id()) {
                return Err(CliError::Usage(format!(
                    "classifier `{}` listed twice",
                    spec.id()
                )));
            }
            out.push(spec);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub smote: SmoteArgs,
    #[command(flatten)]
    pub classifiers: ClassifierArgs,
    /// Master seed; every random stream of the run is derived from it
    #[arg(long, required_unless_present = "from_manifest")]
    pub seed: Option<u64>,
    /// Class value treated as positive
    #[arg(long, default_value = "T")]
    pub positive: String,
    /// Number of cross-validation folds
    #[arg(long, default_value_t = 10)]
    pub folds: usize,
    #[arg(long, value_enum)]
    pub impute: Option<Impute>,
    /// Format of the report printed to stdout
    #[arg(long, value_enum, default_value = "markdown")]
    pub output_format: OutputFormat,
    /// Directory for report.md, report.csv, report.json and manifest.json
    #[arg(long, default_value = "results")]
    pub out: PathBuf,
    /// Repeat the run recorded in a manifest; other run flags are ignored
    #[arg(long)]
    pub from_manifest: Option<PathBuf>,
}

impl BenchArgs {
    pub fn run_config(&self) -> CliResult<RunConfig> {
        let data = self.input.data_path()?;
        let cfg = RunConfig {
            format: self.input.data_format(&data),
            data,
            schema: self.input.schema.clone(),
            class_attribute: self.input.class_attribute.clone(),
            positive_class: self.positive.clone(),
            seed: self.seed.expect("clap enforces --seed"),
            folds: self.folds,
            smote: self.smote.settings(),
            impute: self.impute.map(Into::into),
            classifiers: self.classifiers.specs()?,
            output_format: self.output_format,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl ResampleArgs {
    /// Run configuration covering the input and SMOTE settings.
    pub fn run_config(&self) -> CliResult<RunConfig> {
        let data = self.input.data_path()?;
        let cfg = RunConfig {
            format: self.input.data_format(&data),
            data,
            schema: self.input.schema.clone(),
            class_attribute: self.input.class_attribute.clone(),
            positive_class: "T".into(),
            seed: self.seed,
            folds: 2,
            smote: SmoteSettings {
                within_folds: false,
                ..self.smote.settings()
            },
            impute: self.impute.map(Into::into),
            classifiers: vec![ClassifierSpec::Nb(NaiveBayesConfig::default())],
            output_format: OutputFormat::Json,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Args)]
pub struct PlotArgs {
    /// manifest.json written by `bench`
    #[arg(long)]
    pub manifest: PathBuf,
    /// Output CSV [default: plot.csv next to the manifest]
    #[arg(long)]
    pub out: Option<PathBuf>,
}
