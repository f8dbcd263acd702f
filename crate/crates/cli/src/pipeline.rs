//! parse → impute → resample → folds → cross-validation, plus the artifacts
//! written at the end of a run.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thorax_core::dataset::{
    impute_missing, parse_arff, parse_arff_header, parse_csv, thoracic_schema, write_arff,
    write_csv,
};
use thorax_core::evaluation::{
    cross_validate, csv_table, markdown_table, stratified_folds, CvOptions, TrainTransform,
};
use thorax_core::resampling::{
    doubling_rounds, smote, smote_repeated, ResampleRecord, SmoteConfig,
};
use thorax_core::seed::derive_seed;
use thorax_core::{AttributeKind, Dataset, EvaluationReport};

use crate::config::{DataFormat, OutputFormat, RunConfig};
use crate::error::{CliError, CliResult};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn write(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads the input and applies the class override. Missing values are left
/// in place.
pub fn load(cfg: &RunConfig) -> CliResult<Dataset> {
    let text = read(&cfg.data)?;
    let parsed = match cfg.format {
        DataFormat::Arff => parse_arff(&text),
        DataFormat::Csv => {
            let schema = match &cfg.schema {
                Some(p) => parse_arff_header(&read(p)?).map_err(CliError::stage("schema"))?,
                None => thoracic_schema(),
            };
            parse_csv(&text, &schema)
        }
    };
    let d = parsed.map_err(CliError::stage("parse"))?;
    match &cfg.class_attribute {
        Some(name) => d
            .with_class(name)
            .map_err(CliError::stage("class attribute")),
        None => Ok(d),
    }
}

/// Imputation as configured; without a strategy, missing values are an error
/// because the tree and the network cannot use them.
pub fn prepare(cfg: &RunConfig, d: Dataset) -> CliResult<Dataset> {
    match cfg.impute {
        Some(strategy) => impute_missing(&d, strategy).map_err(CliError::stage("impute")),
        None if d.has_missing() => Err(CliError::Stage {
            stage: "prepare",
            source: thorax_core::Error::Config(
                "input has missing values; choose an --impute strategy".into(),
            ),
        }),
        None => Ok(d),
    }
}

/// The least frequent class, ties to the earlier declared one.
pub fn minority_class(d: &Dataset) -> String {
    let hist = d.class_histogram();
    let mut best = 0;
    for (c, &n) in hist.iter().enumerate() {
        if n < hist[best] {
            best = c;
        }
    }
    d.schema().class_values()[best].clone()
}

fn smote_config(cfg: &RunConfig, seed: u64) -> SmoteConfig {
    SmoteConfig {
        k_neighbors: cfg.smote.k_neighbors,
        percent: cfg.smote.percent,
        seed,
    }
}

/// SMOTE on `d` with the run's settings and the given stream seed.
pub fn oversample(
    cfg: &RunConfig,
    d: &Dataset,
    seed: u64,
) -> thorax_core::Result<(Dataset, ResampleRecord)> {
    let minority = minority_class(d);
    let sc = smote_config(cfg, seed);
    if cfg.smote.repeat {
        let rounds = doubling_rounds(sc.percent).ok_or_else(|| {
            thorax_core::Error::Config(format!("percent {} is not a doubling", sc.percent))
        })?;
        smote_repeated(d, &minority, &sc, rounds)
    } else {
        smote(d, &minority, &sc)
    }
}

/// Whole-dataset resampling step of a run.
pub fn resample(cfg: &RunConfig, d: Dataset) -> CliResult<(Dataset, ResampleRecord)> {
    if !cfg.smote.enabled || cfg.smote.within_folds {
        let record = ResampleRecord::identity(&d);
        return Ok((d, record));
    }
    oversample(cfg, &d, derive_seed(cfg.seed, "smote", 0)).map_err(CliError::stage("smote"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub stage: String,
    pub millis: f64,
}

/// The deterministic part of a run: identical configs give identical JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub artifact_version: String,
    pub config: RunConfig,
    pub resample: ResampleRecord,
    pub reports: Vec<EvaluationReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    #[serde(flatten)]
    pub run: RunReport,
    /// Wall-clock durations; these differ between otherwise identical runs.
    pub timings: Vec<Timing>,
}

pub fn bench(cfg: &RunConfig) -> CliResult<RunManifest> {
    cfg.validate()?;
    let mut timings = Vec::new();
    let mut clock = Instant::now();
    let mut lap = |stage: &str, timings: &mut Vec<Timing>| {
        timings.push(Timing {
            stage: stage.to_string(),
            millis: clock.elapsed().as_secs_f64() * 1e3,
        });
        clock = Instant::now();
    };

    let d = prepare(cfg, load(cfg)?)?;
    let positive = d
        .schema()
        .class_value_index(&cfg.positive_class)
        .map_err(CliError::stage("positive class"))?;
    lap("load", &mut timings);

    let (d, record) = resample(cfg, d)?;
    lap("resample", &mut timings);

    let folds = stratified_folds(&d, cfg.folds, derive_seed(cfg.seed, "folds", 0))
        .map_err(CliError::stage("folds"))?;
    let within = |train: &Dataset, fold: usize| {
        oversample(cfg, train, derive_seed(cfg.seed, "smote-fold", fold as u64)).map(|(d, _)| d)
    };
    let within: &TrainTransform<'_> = &within;
    let transform = (cfg.smote.enabled && cfg.smote.within_folds).then_some(within);
    let opts = CvOptions {
        positive,
        seed: cfg.seed,
        train_transform: transform,
    };

    let mut reports = Vec::with_capacity(cfg.classifiers.len());
    for spec in &cfg.classifiers {
        let report =
            cross_validate(&d, spec, &folds, &opts).map_err(CliError::stage("cross-validation"))?;
        reports.push(report);
        lap(&format!("cv/{}", spec.id()), &mut timings);
    }

    Ok(RunManifest {
        run: RunReport {
            artifact_version: ARTIFACT_VERSION.to_string(),
            config: cfg.clone(),
            resample: record,
            reports,
        },
        timings,
    })
}

pub fn render(
    reports: &[EvaluationReport],
    format: OutputFormat,
    run: &RunReport,
) -> CliResult<String> {
    Ok(match format {
        OutputFormat::Markdown => markdown_table(reports),
        OutputFormat::Csv => csv_table(reports),
        OutputFormat::Json => report_json(run)?,
    })
}

pub fn report_json(run: &RunReport) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(run).map_err(|e| CliError::Manifest(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Writes report.md, report.csv, report.json and manifest.json into `dir`.
pub fn write_outputs(manifest: &RunManifest, dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Write {
        path: dir.to_path_buf(),
        source,
    })?;
    let reports = &manifest.run.reports;
    write(&dir.join("report.md"), &markdown_table(reports))?;
    write(&dir.join("report.csv"), &csv_table(reports))?;
    write(&dir.join("report.json"), &report_json(&manifest.run)?)?;
    let mut m =
        serde_json::to_string_pretty(manifest).map_err(|e| CliError::Manifest(e.to_string()))?;
    m.push('\n');
    write(&dir.join("manifest.json"), &m)
}

pub fn read_manifest(path: &Path) -> CliResult<RunManifest> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Manifest(format!("{}: {e}", path.display())))
}

/// Metric × classifier grid for plotting.
pub fn plot_data(manifest: &RunManifest) -> CliResult<String> {
    if manifest.run.reports.is_empty() {
        return Err(CliError::Manifest(
            "manifest lists no classifier reports".into(),
        ));
    }
    Ok(csv_table(&manifest.run.reports))
}

/// One-line summary followed by a per-attribute missing-value census.
pub fn inspect(d: &Dataset) -> String {
    let nominal = d.attributes().iter().filter(|a| a.is_nominal()).count();
    let numeric = d.attributes().len() - nominal;
    let classes: Vec<String> = d
        .class_counts()
        .iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect();
    let mut out = format!(
        "{} instances, {} attributes ({} nominal, {} numeric), class {{{}}}\n",
        d.len(),
        d.attributes().len(),
        nominal,
        numeric,
        classes.join(", ")
    );
    let census = d.missing_census();
    let total: usize = census.iter().sum();
    let _ = writeln!(out, "missing values: {total}");
    for (attr, missing) in d.attributes().iter().zip(&census) {
        let kind = match &attr.kind {
            AttributeKind::Nominal(v) => format!("nominal({})", v.len()),
            AttributeKind::Numeric => "numeric".to_string(),
        };
        let _ = writeln!(out, "  {:<10} {:<12} missing {}", attr.name, kind, missing);
    }
    out
}

/// Serializes `d` in `format`.
pub fn serialize(d: &Dataset, format: DataFormat) -> CliResult<String> {
    match format {
        DataFormat::Arff => Ok(write_arff(d)),
        DataFormat::Csv => write_csv(d).map_err(CliError::stage("write")),
    }
}
