use std::fmt::Write as _;

use super::{EvaluationReport, SummaryMetrics};

pub const METRIC_LABELS: [&str; 11] = [
    "Correctly Classified Instances",
    "Mean absolute error",
    "Root mean squared error",
    "Relative absolute error",
    "Root relative squared error",
    "True Positive (TP) Rate",
    "False Positive (FP) Rate",
    "Precision",
    "Recall",
    "F-Measure",
    "ROC Area (AUC)",
];

pub type MetricRow = [Option<f64>; 11];

impl SummaryMetrics {
    /// Values in report row order.
    pub fn rows(&self) -> MetricRow {
        [
            Some(self.correctly_classified),
            Some(self.mean_absolute_error),
            Some(self.root_mean_squared_error),
            self.relative_absolute_error,
            self.root_relative_squared_error,
            Some(self.tp_rate),
            Some(self.fp_rate),
            Some(self.precision),
            Some(self.recall),
            Some(self.f_measure),
            self.roc_area,
        ]
    }
}

fn cell(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.1}"),
        None => "n/a".to_string(),
    }
}

/// Metric rows against one column per classifier.
pub fn markdown_table(reports: &[EvaluationReport]) -> String {
    let mut out = String::new();
    let names: Vec<&str> = reports.iter().map(|r| r.display_name.as_str()).collect();
    let _ = writeln!(out, "| Performance Metrics | {} |", names.join(" | "));
    let _ = writeln!(out, "|---|{}", "---:|".repeat(reports.len()));
    let rows: Vec<MetricRow> = reports.iter().map(|r| r.metrics.rows()).collect();
    for (m, label) in METRIC_LABELS.iter().enumerate() {
        let cells: Vec<String> = rows.iter().map(|r| cell(r[m])).collect();
        let _ = writeln!(out, "| {label} | {} |", cells.join(" | "));
    }
    out
}

pub fn csv_table(reports: &[EvaluationReport]) -> String {
    let mut out = String::from("metric");
    for r in reports {
        out.push(',');
        out.push_str(&r.display_name);
    }
    out.push('\n');
    let rows: Vec<MetricRow> = reports.iter().map(|r| r.metrics.rows()).collect();
    for (m, label) in METRIC_LABELS.iter().enumerate() {
        out.push_str(label);
        for r in &rows {
            out.push(',');
            out.push_str(&cell(r[m]));
        }
        out.push('\n');
    }
    out
}
