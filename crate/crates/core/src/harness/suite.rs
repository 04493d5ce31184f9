//! Batch verification: a JSON config lists random instances and/or files;
//! the run produces `results.csv` (one row per instance) and `summary.json`.
//!
//! ```json
//! {
//!   "random": {"seed_start": 0, "count": 200, "k_min": 4, "k_max": 8,
//!              "n_min": 1, "n_max": 4, "scale": 1.0},
//!   "files": ["instances/a.json"],
//!   "timing": false,
//!   "eigenpairs": false
//! }
//! ```
//!
//! Instance `i` of the random block uses seed `seed_start + i`,
//! `k = k_min + i mod K` and `n = n_min + (i div K) mod N` where `K`, `N` are
//! the sizes of the two ranges, so consecutive seeds sweep every `(k, n)`
//! pair. File paths are relative to the config file.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::io::load_polynomial;
use super::random::random_polynomial;
use super::verify::{verify_instance, InstanceRecord, InstanceSource, Tolerance, ToleranceSource, VerificationRow, VerifyOptions};
use crate::bounds::BoundName;
use crate::error::{Error, Result};
use crate::kernel::SPECTRAL_NORM_RESTART_SEED;

pub const CSV_HEADER: [&str; 14] = [
    "id", "k", "n", "rho_r", "thm35", "thm36", "thm37", "b1", "tightest", "slack_thm35", "slack_thm36", "slack_thm37",
    "slack_b1", "elapsed_ms",
];

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default)]
    pub random: Option<RandomSpec>,
    #[serde(default)]
    pub files: Vec<PathBuf>,
    #[serde(default)]
    pub timing: bool,
    #[serde(default)]
    pub eigenpairs: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomSpec {
    #[serde(default)]
    pub seed_start: u64,
    pub count: usize,
    pub k_min: usize,
    pub k_max: usize,
    pub n_min: usize,
    pub n_max: usize,
    #[serde(default = "unit_scale")]
    pub scale: f64,
}

fn unit_scale() -> f64 {
    1.0
}

impl RandomSpec {
    fn validate(&self) -> Result<()> {
        if self.k_min == 0 || self.k_min > self.k_max {
            return Err(Error::Parameter(format!("invalid k range {}..={}", self.k_min, self.k_max)));
        }
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(Error::Parameter(format!("invalid n range {}..={}", self.n_min, self.n_max)));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::Parameter(format!("scale must be positive and finite (got {})", self.scale)));
        }
        Ok(())
    }

    /// `(seed, k, n)` of instance `i`.
    pub fn shape_of(&self, i: usize) -> (u64, usize, usize) {
        let kr = self.k_max - self.k_min + 1;
        let nr = self.n_max - self.n_min + 1;
        (self.seed_start.wrapping_add(i as u64), self.k_min + i % kr, self.n_min + (i / kr) % nr)
    }
}

impl SuiteConfig {
    /// Reads a config file and makes its instance paths absolute relative to
    /// the file's directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg: SuiteConfig = serde_json::from_str(&text)
            .map_err(|e| Error::Parse { path: path.display().to_string(), message: e.to_string() })?;
        let base = path.parent().unwrap_or(Path::new(""));
        for f in cfg.files.iter_mut() {
            if f.is_relative() {
                *f = base.join(&*f);
            }
        }
        Ok(cfg)
    }

    /// Materializes the instance list: random instances first, then files.
    pub fn instances(&self) -> Result<Vec<InstanceRecord>> {
        let mut out = Vec::new();
        if let Some(spec) = &self.random {
            spec.validate()?;
            for i in 0..spec.count {
                let (seed, k, n) = spec.shape_of(i);
                out.push(InstanceRecord {
                    id: format!("{:05}-seed{seed}", out.len()),
                    polynomial: random_polynomial(k, n, seed, spec.scale)?,
                    seed: Some(seed),
                    source: InstanceSource::Random,
                });
            }
        }
        for f in &self.files {
            let stem = f.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "file".into());
            out.push(InstanceRecord {
                id: format!("{:05}-{stem}", out.len()),
                polynomial: load_polynomial(f)?,
                seed: None,
                source: InstanceSource::File,
            });
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ViolationRecord {
    pub id: String,
    pub bound_name: BoundName,
    pub rho_r: f64,
    pub bound: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorRecord {
    pub id: String,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundSummary {
    pub bound_name: BoundName,
    /// Instances on which the bound was computed.
    pub computed: usize,
    pub mean_slack: f64,
    pub median_slack: f64,
    /// Instances on which this bound was the tightest.
    pub wins: usize,
    pub win_rate: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub instances: usize,
    pub passed: bool,
    pub violations: usize,
    pub violation_list: Vec<ViolationRecord>,
    pub solver_errors: usize,
    pub error_list: Vec<ErrorRecord>,
    pub tolerance: f64,
    pub tolerance_source: ToleranceSource,
    pub restart_seed: u64,
    pub bounds: Vec<BoundSummary>,
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub rows: Vec<VerificationRow>,
    pub summary: SuiteSummary,
}

impl SuiteOutcome {
    /// `false` iff any violation or solver error occurred; drives the exit
    /// status of the CLI.
    pub fn passed(&self) -> bool {
        self.summary.passed
    }
}

fn median(sorted: &[f64]) -> f64 {
    match sorted.len() {
        0 => 0.0,
        l if l % 2 == 1 => sorted[l / 2],
        l => (sorted[l / 2 - 1] + sorted[l / 2]) / 2.0,
    }
}

fn summarize(rows: &[VerificationRow], tol: Tolerance) -> SuiteSummary {
    let mut violation_list = Vec::new();
    let mut error_list = Vec::new();
    for row in rows {
        for &b in &row.violations {
            violation_list.push(ViolationRecord {
                id: row.id.clone(),
                bound_name: b,
                rho_r: row.rho_r.unwrap_or(f64::NAN),
                bound: row.bound(b).unwrap_or(f64::NAN),
            });
        }
        for e in &row.errors {
            error_list.push(ErrorRecord { id: row.id.clone(), message: e.clone() });
        }
    }
    let bounds = BoundName::EIGENVALUE_BOUNDS
        .iter()
        .map(|&name| {
            let mut slacks: Vec<f64> = rows.iter().filter_map(|r| r.slack(name)).collect();
            slacks.sort_by(f64::total_cmp);
            let computed = rows.iter().filter(|r| r.bound(name).is_some()).count();
            let wins = rows.iter().filter(|r| r.tightest_bound == Some(name)).count();
            let mean_slack = if slacks.is_empty() { 0.0 } else { slacks.iter().sum::<f64>() / slacks.len() as f64 };
            BoundSummary {
                bound_name: name,
                computed,
                mean_slack,
                median_slack: median(&slacks),
                wins,
                win_rate: if rows.is_empty() { 0.0 } else { wins as f64 / rows.len() as f64 },
            }
        })
        .collect();
    SuiteSummary {
        instances: rows.len(),
        passed: violation_list.is_empty() && error_list.is_empty(),
        violations: violation_list.len(),
        violation_list,
        solver_errors: error_list.len(),
        error_list,
        tolerance: tol.value,
        tolerance_source: tol.source,
        restart_seed: SPECTRAL_NORM_RESTART_SEED,
        bounds,
    }
}

/// Verifies every instance (in parallel) and summarizes. Rows come back in
/// instance order.
pub fn run_suite(config: &SuiteConfig, tolerance: Tolerance) -> Result<SuiteOutcome> {
    let instances = config.instances()?;
    let opts = VerifyOptions { tolerance: tolerance.value, timing: config.timing, eigenpairs: config.eigenpairs };
    let rows: Vec<VerificationRow> =
        instances.par_iter().map(|inst| verify_instance(&inst.id, &inst.polynomial, &opts)).collect();
    let summary = summarize(&rows, tolerance);
    Ok(SuiteOutcome { rows, summary })
}

fn cell(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_owned(), |x| x.to_string())
}

/// The CSV report as a string, header included.
pub fn rows_to_csv(rows: &[VerificationRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Parameter(format!("csv: {e}"));
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in rows {
        let mut rec = vec![r.id.clone(), r.k.to_string(), r.n.to_string(), cell(r.rho_r)];
        rec.extend(BoundName::EIGENVALUE_BOUNDS.iter().map(|&b| cell(r.bound(b))));
        rec.push(r.tightest_bound.map_or("NA", BoundName::short).to_owned());
        rec.extend(BoundName::EIGENVALUE_BOUNDS.iter().map(|&b| cell(r.slack(b))));
        rec.push(cell(r.elapsed_ms));
        w.write_record(&rec).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parameter(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Writes `results.csv` and `summary.json` into `out_dir` (created if
/// missing) and returns their paths.
pub fn write_reports(outcome: &SuiteOutcome, out_dir: impl AsRef<Path>) -> Result<(PathBuf, PathBuf)> {
    let dir = out_dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let csv_path = dir.join("results.csv");
    fs::write(&csv_path, rows_to_csv(&outcome.rows)?).map_err(|e| Error::io(&csv_path, e))?;
    let summary_path = dir.join("summary.json");
    let mut json = serde_json::to_string_pretty(&outcome.summary).expect("summary serializes");
    json.push('\n');
    fs::write(&summary_path, json).map_err(|e| Error::io(&summary_path, e))?;
    Ok((csv_path, summary_path))
}
