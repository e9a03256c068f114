//! Directory runner.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::CliError;
use crate::report::{format_f64, Report, Status};
use crate::run::{run_scenario, Overrides};

pub const REPORT_SUFFIX: &str = ".report.json";

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOutcome {
    /// Sorted by scenario name.
    pub reports: Vec<Report>,
    /// Where each report was written, in the same order.
    pub written: Vec<PathBuf>,
    pub exit_code: i32,
}

/// Scenario files in `dir` matching `filter` (default `*.json`), excluding reports.
pub fn scenario_files(dir: &Path, filter: Option<&str>) -> Result<Vec<PathBuf>, CliError> {
    if !dir.is_dir() {
        return Err(CliError::input(format!("{} is not a directory", dir.display())));
    }
    let escaped = glob::Pattern::escape(&dir.to_string_lossy());
    let pattern = format!("{escaped}/{}", filter.unwrap_or("*.json"));
    let mut files: Vec<PathBuf> = glob::glob(&pattern)
        .map_err(|e| CliError::input(format!("bad filter: {e}")))?
        .filter_map(Result::ok)
        .filter(|p| p.is_file() && !p.to_string_lossy().ends_with(REPORT_SUFFIX))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::input(format!("no scenarios match {pattern}")));
    }
    Ok(files)
}

pub fn report_path(scenario: &Path) -> PathBuf {
    let stem = scenario.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    scenario.with_file_name(format!("{stem}{REPORT_SUFFIX}"))
}

/// Runs every matching scenario in parallel and writes `<stem>.report.json`
/// next to each input. Exit code is 0 iff every report is `ok`, otherwise
/// the largest per-report code.
pub fn run_suite(dir: &Path, filter: Option<&str>, overrides: &Overrides) -> Result<SuiteOutcome, CliError> {
    let files = scenario_files(dir, filter)?;
    let mut runs: Vec<(Report, PathBuf)> =
        files.par_iter().map(|f| (run_scenario(f, overrides), report_path(f))).collect();
    runs.sort_by(|a, b| a.0.name.cmp(&b.0.name).then_with(|| a.1.cmp(&b.1)));
    for (report, path) in &runs {
        std::fs::write(path, report.to_json())
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
    }
    let exit_code = runs.iter().map(|(r, _)| r.status.exit_code()).max().unwrap_or(0);
    let (reports, written) = runs.into_iter().unzip();
    Ok(SuiteOutcome { reports, written, exit_code })
}

/// Fixed-width human summary.
pub fn summary_table(reports: &[Report]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<32} {:<16} {:<20} {:>24} {:>10}", "scenario", "task", "status", "radius", "ms");
    for r in reports {
        let task = r.task.map(|t| t.as_str()).unwrap_or("-");
        let radius = r.results.radius.map(format_f64).unwrap_or_else(|| "-".into());
        let name: String = r.name.chars().take(32).collect();
        let _ = writeln!(out, "{name:<32} {task:<16} {:<20} {radius:>24} {:>10.1}", r.status.as_str(), r.wall_ms);
    }
    let ok = reports.iter().filter(|r| r.status == Status::Ok).count();
    let _ = writeln!(out, "{ok}/{} ok", reports.len());
    out
}
