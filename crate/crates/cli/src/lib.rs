//! The `thorax` command line: inspect, resample, bench and plotdata.

pub mod args;
pub mod config;
pub mod error;
pub mod pipeline;

use std::io::Write as _;
use std::path::{Path, PathBuf};

use args::{BenchArgs, Cli, Command, InputArgs, PlotArgs, ResampleArgs};
use config::{OutputFormat, RunConfig};
use error::{CliError, CliResult};

pub use error::CliError as Error;

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Inspect(a) => inspect(&a),
        Command::Resample(a) => resample(&a),
        Command::Bench(a) => bench(&a),
        Command::Plotdata(a) => plotdata(&a),
    }
}

fn print(s: &str) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(s.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|source| CliError::Write {
            path: PathBuf::from("<stdout>"),
            source,
        })
}

fn inspect(a: &InputArgs) -> CliResult<()> {
    let data = a.data_path()?;
    let cfg = RunConfig {
        format: a.data_format(&data),
        data,
        schema: a.schema.clone(),
        class_attribute: a.class_attribute.clone(),
        positive_class: String::new(),
        seed: 0,
        folds: 2,
        smote: Default::default(),
        impute: None,
        classifiers: Vec::new(),
        output_format: OutputFormat::Markdown,
    };
    let d = pipeline::load(&cfg)?;
    print(&pipeline::inspect(&d))
}

fn record_path(output: &Path) -> PathBuf {
    let mut name = output.file_name().unwrap_or_default().to_os_string();
    name.push(".record.json");
    output.with_file_name(name)
}

fn resample(a: &ResampleArgs) -> CliResult<()> {
    let cfg = a.run_config()?;
    let output = a
        .output
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("resampled.{}", cfg.format.extension())));
    let record_out = a.record.clone().unwrap_or_else(|| record_path(&output));

    let d = pipeline::load(&cfg)?;
    let (text, record) = if !cfg.smote.enabled && cfg.impute.is_none() {
        // Nothing changes the data, so the input bytes are copied verbatim.
        let bytes = std::fs::read(&cfg.data).map_err(|source| CliError::Read {
            path: cfg.data.clone(),
            source,
        })?;
        std::fs::write(&output, bytes).map_err(|source| CliError::Write {
            path: output.clone(),
            source,
        })?;
        (None, thorax_core::resampling::ResampleRecord::identity(&d))
    } else {
        let d = pipeline::prepare(&cfg, d)?;
        let (d, record) = pipeline::resample(&cfg, d)?;
        (Some(pipeline::serialize(&d, cfg.format)?), record)
    };
    if let Some(text) = text {
        pipeline::write(&output, &text)?;
    }
    let mut json =
        serde_json::to_string_pretty(&record).map_err(|e| CliError::Manifest(e.to_string()))?;
    json.push('\n');
    pipeline::write(&record_out, &json)?;
    eprintln!(
        "{}: {} instances ({} synthetic), record in {}",
        output.display(),
        record.final_counts.values().sum::<usize>(),
        record.synthetic_created,
        record_out.display()
    );
    Ok(())
}

fn bench(a: &BenchArgs) -> CliResult<()> {
    let (cfg, format) = match &a.from_manifest {
        Some(path) => {
            let m = pipeline::read_manifest(path)?;
            (m.run.config, a.output_format)
        }
        None => (a.run_config()?, a.output_format),
    };
    let manifest = pipeline::bench(&cfg)?;
    pipeline::write_outputs(&manifest, &a.out)?;
    print(&pipeline::render(
        &manifest.run.reports,
        format,
        &manifest.run,
    )?)
}

fn plotdata(a: &PlotArgs) -> CliResult<()> {
    let manifest = pipeline::read_manifest(&a.manifest)?;
    let grid = pipeline::plot_data(&manifest)?;
    let out = a
        .out
        .clone()
        .unwrap_or_else(|| a.manifest.with_file_name("plot.csv"));
    pipeline::write(&out, &grid)?;
    eprintln!("wrote {}", out.display());
    Ok(())
}
