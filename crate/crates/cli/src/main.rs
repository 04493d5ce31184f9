use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use qbound::harness::{self, SuiteConfig, Tolerance, VerifyOptions};
use qbound::{polynomial_right_spectrum, scalar_bound, selected_bounds, BoundEntry, BoundName, Corollary, Error, MatrixPolynomial};
use serde_json::json;

#[derive(Parser)]
#[command(name = "qbound", version, about = "Bounds on right eigenvalues of quaternionic matrix polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate eigenvalue bounds for a polynomial file.
    Bound {
        file: PathBuf,
        /// Comma-separated subset of thm35,thm36,thm37,b1 (also lemma33, lemma34).
        #[arg(long, value_delimiter = ',')]
        bounds: Option<Vec<String>>,
    },
    /// Bounds on the zeros of a scalar quaternionic polynomial.
    Zeros {
        #[arg(long)]
        coeffs: PathBuf,
    },
    /// Write a seeded random polynomial.
    Random {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare every bound with the right spectral radius.
    Verify {
        file: PathBuf,
        /// Also check right eigenpair residuals.
        #[arg(long)]
        eigenpairs: bool,
    },
    /// Run a batch of instances and write results.csv and summary.json.
    Suite {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(v)?;
    emit(&text)
}

// a closed pipe (`| head`) is not an error worth a panic
fn emit(text: &str) -> Result<()> {
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn cmd_bound(file: PathBuf, names: Option<Vec<String>>) -> Result<bool> {
    let poly = harness::load_polynomial(&file)?;
    let names: Vec<BoundName> = match names {
        Some(list) => list.iter().map(|s| s.parse()).collect::<qbound::Result<_>>()?,
        None => BoundName::EIGENVALUE_BOUNDS.to_vec(),
    };
    let set = selected_bounds(&poly, &names);
    print_json(&json!({ "k": poly.k(), "n": poly.n(), "entries": set.entries, "tightest": set.tightest }))?;
    Ok(true)
}

fn cmd_zeros(path: PathBuf) -> Result<bool> {
    let coeffs = harness::load_scalar_coeffs(&path)?;
    let entries: Vec<BoundEntry<f64>> = Corollary::ALL
        .iter()
        .map(|&c| match scalar_bound(&coeffs, c) {
            Ok(r) => BoundEntry::Computed(r),
            Err(e @ Error::Degree { .. }) => BoundEntry::Skipped { bound_name: c.bound_name(), reason: e.to_string() },
            Err(e) => BoundEntry::Failed { bound_name: c.bound_name(), error: e.to_string() },
        })
        .collect();
    let spectrum = polynomial_right_spectrum(&MatrixPolynomial::scalar(&coeffs)?)?;
    print_json(&json!({
        "degree": coeffs.len(),
        "entries": entries,
        "zero_moduli": spectrum.moduli(),
        "max_modulus": spectrum.radius,
    }))?;
    Ok(true)
}

fn cmd_random(k: usize, n: usize, seed: u64, scale: f64, out: Option<PathBuf>) -> Result<bool> {
    let poly = harness::random_polynomial(k, n, seed, scale)?;
    match out {
        Some(path) => harness::save_polynomial(&path, &poly)?,
        None => emit(&harness::polynomial_to_json(&poly))?,
    }
    Ok(true)
}

fn cmd_verify(file: PathBuf, eigenpairs: bool) -> Result<bool> {
    let poly = harness::load_polynomial(&file)?;
    let tol = Tolerance::from_env()?;
    let id = file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let row = harness::verify_instance(&id, &poly, &VerifyOptions { tolerance: tol.value, eigenpairs, ..Default::default() });
    print_json(&json!({ "tolerance": tol, "row": row }))?;
    Ok(row.passed())
}

fn cmd_suite(config: PathBuf, out_dir: PathBuf) -> Result<bool> {
    let cfg = SuiteConfig::load(&config)?;
    let tol = Tolerance::from_env()?;
    let outcome = harness::run_suite(&cfg, tol)?;
    let (csv, summary) = harness::write_reports(&outcome, &out_dir)?;
    let s = &outcome.summary;
    eprintln!(
        "{} instances, {} violations, {} errors -> {}, {}",
        s.instances,
        s.violations,
        s.solver_errors,
        csv.display(),
        summary.display()
    );
    Ok(outcome.passed())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Bound { file, bounds } => cmd_bound(file, bounds),
        Command::Zeros { coeffs } => cmd_zeros(coeffs),
        Command::Random { k, n, seed, scale, out } => cmd_random(k, n, seed, scale, out),
        Command::Verify { file, eigenpairs } => cmd_verify(file, eigenpairs),
        Command::Suite { config, out_dir } => {
            cmd_suite(config.clone(), out_dir).with_context(|| format!("suite {}", config.display()))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
