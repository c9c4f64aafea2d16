//! Result files written under a phase's output directory.
//!
//! Every file except `timings.csv` is a pure function of the config and seeds,
//! so a repeated run reproduces it byte for byte.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use vqebench_core::REFERENCE_HUBBARD_EIGENVALUES;

use crate::config::{Phase, PhaseConfig};
use crate::error::{BenchError, Result};
use crate::protocol::{Curve, FeTable, PhaseReport, RunOutcome, RunRecord, Verdict};

/// Shown in `summary.csv` for a cell with any unsuccessful run.
pub const NONE_CELL: &str = "---";

pub fn runs_jsonl(records: &[RunRecord]) -> String {
    records
        .iter()
        .map(|r| serde_json::to_string(r).expect("records serialize") + "\n")
        .collect()
}

/// One row per optimizer, one column per model and shot setting.
pub fn summary_csv(table: &FeTable) -> String {
    let mut out = String::from("optimizer");
    for c in &table.columns {
        out.push(',');
        out.push_str(c);
    }
    out.push('\n');
    for (opt, cells) in &table.rows {
        out.push_str(opt);
        for cell in cells {
            match cell {
                Some(mean) => write!(out, ",{mean:.1}").unwrap(),
                None => write!(out, ",{NONE_CELL}").unwrap(),
            }
        }
        out.push('\n');
    }
    out
}

/// Long format: one row per (optimizer, shots, checkpoint).
pub fn curves_csv(curves: &[Curve]) -> String {
    let runs = curves.iter().map(|c| c.per_run.len()).max().unwrap_or(0);
    let mut out = String::from("optimizer,shots,fe_checkpoint,mean_best");
    for r in 0..runs {
        write!(out, ",run_{r}").unwrap();
    }
    out.push('\n');
    for curve in curves {
        for (i, fe) in curve.checkpoints.iter().enumerate() {
            write!(
                out,
                "{},{},{fe},{}",
                curve.optimizer, curve.shots, curve.mean[i]
            )
            .unwrap();
            for r in 0..runs {
                match curve.per_run.get(r) {
                    Some(run) => write!(out, ",{}", run[i]).unwrap(),
                    None => out.push(','),
                }
            }
            out.push('\n');
        }
    }
    out
}

pub fn verdicts_csv(verdicts: &[Verdict]) -> String {
    let mut out = String::from("optimizer,runs,successes,verdict\n");
    for v in verdicts {
        let verdict = if v.passed { "PASS" } else { "FAIL" };
        writeln!(out, "{},{},{},{verdict}", v.optimizer, v.runs, v.successes).unwrap();
    }
    out
}

/// Computed eigenvalues beside the reference list, index by index.
pub fn spectrum_csv(spectra: &[(String, Vec<f64>)]) -> String {
    let mut out = String::from("model,index,computed,reference\n");
    for (model, values) in spectra {
        for (i, e) in values.iter().enumerate() {
            let reference = match (
                model.starts_with("hubbard"),
                REFERENCE_HUBBARD_EIGENVALUES.get(i),
            ) {
                (true, Some(r)) => r.to_string(),
                _ => String::new(),
            };
            writeln!(out, "{model},{i},{e},{reference}").unwrap();
        }
    }
    out
}

pub fn timings_csv(records: &[RunRecord]) -> String {
    let mut out = String::from("optimizer,model,shots,run,fe_used,wall_time_s\n");
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{:.3}",
            r.optimizer, r.model, r.shots, r.run, r.fe_used, r.wall_time
        )
        .unwrap();
    }
    out
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("results serialize") + "\n"
}

fn write(dir: &Path, name: &str, contents: &str, written: &mut Vec<PathBuf>) -> Result<()> {
    let path = dir.join(name);
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| BenchError::io(parent, e))?;
    }
    fs::write(&path, contents).map_err(|e| BenchError::io(&path, e))?;
    written.push(path);
    Ok(())
}

/// Write every result file of `report` into `dir`; returns the paths written.
///
/// Files that do not apply to the phase (curves outside phase 3) are written
/// with their header only, so downstream tooling sees a fixed layout.
pub fn export(report: &PhaseReport, cfg: &PhaseConfig, dir: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let records = report.records();
    write(dir, "config.json", &json(cfg), &mut written)?;
    write(dir, "runs.jsonl", &runs_jsonl(&records), &mut written)?;
    write(
        dir,
        "summary.csv",
        &summary_csv(&report.table),
        &mut written,
    )?;
    write(dir, "curves.csv", &curves_csv(&report.curves), &mut written)?;
    write(dir, "timings.csv", &timings_csv(&records), &mut written)?;
    match report.phase {
        Phase::Screening => write(
            dir,
            "verdicts.csv",
            &verdicts_csv(&report.verdicts),
            &mut written,
        )?,
        Phase::Convergence => write(
            dir,
            "spectrum.csv",
            &spectrum_csv(&report.spectra),
            &mut written,
        )?,
        Phase::FeComparison => {}
    }
    for RunOutcome { record, trace } in &report.outcomes {
        write(dir, &record.trace, &json(trace), &mut written)?;
    }
    Ok(written)
}
