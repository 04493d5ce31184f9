use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::bounds::{all_bounds, BoundEntry, BoundName, BoundSet};
use crate::companion::{polynomial_eigenpairs, polynomial_right_spectrum, MatrixPolynomial};
use crate::error::{Error, Result};

/// Default relative slack when comparing `ρ_r` with a bound.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
/// Environment variable that overrides [`DEFAULT_TOLERANCE`].
pub const TOLERANCE_ENV: &str = "QBOUND_TOL";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceSource {
    File,
    Random,
}

#[derive(Clone, Debug)]
pub struct InstanceRecord {
    pub id: String,
    pub polynomial: MatrixPolynomial<f64>,
    pub seed: Option<u64>,
    pub source: InstanceSource,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ToleranceSource {
    Default,
    Env,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerance {
    pub value: f64,
    pub source: ToleranceSource,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { value: DEFAULT_TOLERANCE, source: ToleranceSource::Default }
    }
}

impl Tolerance {
    /// Reads [`TOLERANCE_ENV`]; unset or empty means the default.
    pub fn from_env() -> Result<Self> {
        Self::from_setting(std::env::var(TOLERANCE_ENV).ok().as_deref())
    }

    pub fn from_setting(raw: Option<&str>) -> Result<Self> {
        match raw.map(str::trim) {
            None | Some("") => Ok(Self::default()),
            Some(s) => {
                let value: f64 = s.parse().map_err(|_| Error::Parameter(format!("{TOLERANCE_ENV}={s:?} is not a number")))?;
                if !(value.is_finite() && value >= 0.0) {
                    return Err(Error::Parameter(format!("{TOLERANCE_ENV} must be finite and non-negative (got {s})")));
                }
                Ok(Self { value, source: ToleranceSource::Env })
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub tolerance: f64,
    /// Record wall-clock time per instance. Off by default so reports are
    /// reproducible byte for byte.
    pub timing: bool,
    /// Also extract right eigenpairs and check their residuals.
    pub eigenpairs: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { tolerance: DEFAULT_TOLERANCE, timing: false, eigenpairs: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationRow {
    pub id: String,
    pub k: usize,
    pub n: usize,
    pub rho_r: Option<f64>,
    pub bounds: BoundSet<f64>,
    /// `bound − ρ_r` for every computed bound.
    pub slacks: BTreeMap<BoundName, f64>,
    pub tightest_bound: Option<BoundName>,
    pub violations: Vec<BoundName>,
    /// Solver and bound failures; any entry fails the instance.
    pub errors: Vec<String>,
    pub eigenpairs_checked: usize,
    /// Largest `residual / threshold` over the checked eigenpairs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_residual_ratio: Option<f64>,
    pub elapsed_ms: Option<f64>,
}

impl VerificationRow {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.errors.is_empty()
    }

    pub fn bound(&self, name: BoundName) -> Option<f64> {
        self.bounds.value(name)
    }

    pub fn slack(&self, name: BoundName) -> Option<f64> {
        self.slacks.get(&name).copied()
    }
}

/// Whether `rho` exceeds `bound` by more than `tol · max(1, bound)`.
pub fn is_violation(rho: f64, bound: f64, tol: f64) -> bool {
    rho > bound + tol * bound.max(1.0)
}

/// Computes `ρ_r(L)` from the companion spectrum and every applicable bound,
/// and compares them. Numerical failures are recorded in the row.
pub fn verify_instance(id: &str, poly: &MatrixPolynomial<f64>, opts: &VerifyOptions) -> VerificationRow {
    let start = Instant::now();
    let mut errors = Vec::new();

    let rho_r = match polynomial_right_spectrum(poly) {
        Ok(s) => Some(s.radius),
        Err(e) => {
            errors.push(format!("right spectrum: {e}"));
            None
        }
    };
    let bounds = all_bounds(poly);
    let mut slacks = BTreeMap::new();
    let mut violations = Vec::new();
    for entry in &bounds.entries {
        match entry {
            BoundEntry::Computed(r) => {
                if let Some(rho) = rho_r {
                    slacks.insert(r.bound_name, r.value - rho);
                    if is_violation(rho, r.value, opts.tolerance) {
                        violations.push(r.bound_name);
                    }
                }
            }
            BoundEntry::Failed { bound_name, error } => errors.push(format!("{bound_name}: {error}")),
            BoundEntry::Skipped { .. } => {}
        }
    }

    let mut eigenpairs_checked = 0;
    let mut worst_residual_ratio = None;
    if opts.eigenpairs {
        match polynomial_eigenpairs(poly) {
            Ok(pairs) => {
                eigenpairs_checked = pairs.len();
                for p in &pairs {
                    let ratio = p.residual / p.threshold;
                    worst_residual_ratio = Some(worst_residual_ratio.map_or(ratio, |w: f64| w.max(ratio)));
                    if !p.passes() {
                        errors.push(format!(
                            "eigenpair {}{:+}i: residual {:e} above {:e}",
                            p.lambda.re, p.lambda.im, p.residual, p.threshold
                        ));
                    }
                }
            }
            Err(e) => errors.push(format!("eigenpairs: {e}")),
        }
    }

    VerificationRow {
        id: id.to_owned(),
        k: poly.k(),
        n: poly.n(),
        rho_r,
        tightest_bound: bounds.tightest,
        bounds,
        slacks,
        violations,
        errors,
        eigenpairs_checked,
        worst_residual_ratio,
        elapsed_ms: opts.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    }
}
