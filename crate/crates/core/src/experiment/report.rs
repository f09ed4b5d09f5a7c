use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

use super::config::ModelKind;
use super::svg::{even_ticks, Plot, Series, PALETTE};
use super::sweep::{Evaluation, SweepReport};

pub const CSV_FILE: &str = "results.csv";
pub const FAILURE_LOG: &str = "failures.log";
pub const CSV_HEADER: &str = "model,test_set,resolution,accuracy,tp,fp,fn,tn,tpr,fpr,f1,auc";

/// Files written by [`cmd_report`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportOutputs {
    pub csv: PathBuf,
    pub svgs: Vec<PathBuf>,
    pub failure_log: Option<PathBuf>,
}

pub fn results_csv(report: &SweepReport) -> String {
    debug_assert!(CSV_HEADER.ends_with(Evaluation::CSV_HEADER));
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in &report.rows {
        let _ = writeln!(out, "{},{},{},{}", row.model, row.test_set, row.resolution, row.eval.csv_fields());
    }
    out
}

pub fn failure_log(report: &SweepReport) -> String {
    let mut out = String::new();
    for f in &report.failures {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}",
            f.model,
            f.resolution,
            f.test_set.as_deref().unwrap_or("*"),
            f.message.replace('\n', " ")
        );
    }
    out
}

fn color(report: &SweepReport, model: ModelKind) -> &'static str {
    let i = report.models.iter().position(|&m| m == model).unwrap_or(0);
    PALETTE[i % PALETTE.len()]
}

/// Accuracy against resolution, one polyline per model.
pub fn accuracy_plot(report: &SweepReport, test_set: &str) -> Option<Plot> {
    let mut series = Vec::new();
    let mut lowest = 1.0f64;
    let mut xs: Vec<f64> = Vec::new();
    for &model in &report.models {
        let mut points: Vec<(f64, f64)> = report
            .rows
            .iter()
            .filter(|r| r.model == model && r.test_set == test_set)
            .map(|r| (f64::from(r.resolution), r.eval.accuracy))
            .collect();
        if points.is_empty() {
            continue;
        }
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        points.dedup_by(|a, b| a.0 == b.0);
        lowest = points.iter().fold(lowest, |m, p| m.min(p.1));
        xs.extend(points.iter().map(|p| p.0));
        let mut s = Series::new(model.name(), points, color(report, model));
        s.markers = true;
        series.push(s);
    }
    if series.is_empty() {
        return None;
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let x_range = (xs[0].min(0.0), xs[xs.len() - 1]);
    let y_min = ((lowest * 10.0).floor() / 10.0).clamp(0.0, 0.9);
    let y_range = (y_min, 1.0);
    Some(Plot {
        title: format!("Accuracy vs resolution ({test_set})"),
        x_label: "Resolution (pixels per side)".into(),
        y_label: "Accuracy".into(),
        x_range,
        y_range,
        x_ticks: xs,
        y_ticks: even_ticks(y_range, ((1.0 - y_min) * 10.0).round().max(1.0) as usize),
        series,
    })
}

/// Threshold-swept curves for each resolution in light grey, the
/// across-resolution operating-point curve on top, and the chance line.
pub fn roc_plot(report: &SweepReport, model: ModelKind, test_set: &str) -> Option<Plot> {
    let rows: Vec<_> = report
        .rows
        .iter()
        .filter(|r| r.model == model && r.test_set == test_set)
        .collect();
    if rows.is_empty() {
        return None;
    }
    let mut series = vec![{
        let mut s = Series::new("chance", vec![(0.0, 0.0), (1.0, 1.0)], "#7f7f7f");
        s.dashed = true;
        s.stroke_width = 1.0;
        s
    }];
    let mut labeled = false;
    for r in &rows {
        if let Some(roc) = &r.eval.roc {
            let label = if labeled { String::new() } else { "threshold sweep per resolution".into() };
            labeled = true;
            let mut s = Series::new(label, roc.points.clone(), "#b0b0b0");
            s.stroke_width = 1.0;
            series.push(s);
        }
    }
    if let Some(rr) = report
        .resolution_rocs
        .iter()
        .find(|c| c.model == model && c.test_set == test_set)
    {
        let mut s = Series::new(
            format!("across resolutions (AUC {:.3})", rr.auc),
            rr.curve.points.clone(),
            color(report, model),
        );
        s.markers = true;
        series.push(s);
    }
    let unit = (0.0, 1.0);
    Some(Plot {
        title: format!("ROC: {model} ({test_set})"),
        x_label: "False positive rate".into(),
        y_label: "True positive rate".into(),
        x_range: unit,
        y_range: unit,
        x_ticks: even_ticks(unit, 5),
        y_ticks: even_ticks(unit, 5),
        series,
    })
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Writes `results.csv`, the SVG figures, and the failure log (when any
/// cell failed) into `out_dir`.
pub fn cmd_report(report: &SweepReport, out_dir: &Path) -> Result<ReportOutputs> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let csv = out_dir.join(CSV_FILE);
    write(&csv, &results_csv(report))?;

    let mut svgs = Vec::new();
    for test_set in &report.test_sets {
        if let Some(plot) = accuracy_plot(report, test_set) {
            let path = out_dir.join(format!("accuracy_{test_set}.svg"));
            write(&path, &plot.render())?;
            svgs.push(path);
        }
        for &model in &report.models {
            if let Some(plot) = roc_plot(report, model, test_set) {
                let path = out_dir.join(format!("roc_{model}_{test_set}.svg"));
                write(&path, &plot.render())?;
                svgs.push(path);
            }
        }
    }

    let failure_log_path = if report.failures.is_empty() {
        None
    } else {
        let path = out_dir.join(FAILURE_LOG);
        write(&path, &failure_log(report))?;
        Some(path)
    };
    Ok(ReportOutputs {
        csv,
        svgs,
        failure_log: failure_log_path,
    })
}

/// Reads `report.json` from `input` and renders it into `out_dir`.
pub fn cmd_report_file(input: &Path, out_dir: &Path) -> Result<ReportOutputs> {
    cmd_report(&SweepReport::load(input)?, out_dir)
}
