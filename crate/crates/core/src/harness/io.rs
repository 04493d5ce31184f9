//! Polynomial files.
//!
//! ```json
//! {"n": 1, "k": 2, "coeffs": [[[[1, 0, 0, 0]]], [[[0, 1, 0, 0]]]]}
//! ```
//!
//! `coeffs` lists `A₀ … A_{k−1}`, each an `n × n` nested array of
//! `[w, x, y, z]` quadruples. An optional `"leading"` entry must be the
//! identity.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::companion::MatrixPolynomial;
use crate::error::{Error, Result};
use crate::qmat::QMatrix;
use crate::quat::Quaternion;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolynomialFile {
    n: usize,
    k: usize,
    coeffs: Vec<QMatrix<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    leading: Option<QMatrix<f64>>,
}

fn parse_error(origin: &str, e: serde_json::Error) -> Error {
    Error::Parse { path: origin.to_owned(), message: e.to_string() }
}

/// Parses the JSON text of a polynomial file. `origin` names the source in
/// error messages.
pub fn parse_polynomial(text: &str, origin: &str) -> Result<MatrixPolynomial<f64>> {
    let file: PolynomialFile = serde_json::from_str(text).map_err(|e| parse_error(origin, e))?;
    if file.k == 0 {
        return Err(Error::Degree { op: "polynomial file", min: 1, k: 0 });
    }
    if file.n == 0 {
        return Err(Error::shape(format!("{origin}: block size n must be positive")));
    }
    if file.coeffs.len() != file.k {
        return Err(Error::shape(format!("{origin}: k = {} but {} coefficients given", file.k, file.coeffs.len())));
    }
    if let Some((i, a)) = file.coeffs.iter().enumerate().find(|(_, a)| a.shape() != (file.n, file.n)) {
        return Err(Error::shape(format!(
            "{origin}: coefficient A{i} is {}x{}, expected {n}x{n}",
            a.rows(),
            a.cols(),
            n = file.n
        )));
    }
    match &file.leading {
        Some(lead) => MatrixPolynomial::with_leading(file.coeffs, lead),
        None => MatrixPolynomial::new(file.coeffs),
    }
}

pub fn load_polynomial(path: impl AsRef<Path>) -> Result<MatrixPolynomial<f64>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_polynomial(&text, &path.display().to_string())
}

pub fn polynomial_to_json(poly: &MatrixPolynomial<f64>) -> String {
    let file = PolynomialFile { n: poly.n(), k: poly.k(), coeffs: poly.coeffs().to_vec(), leading: None };
    serde_json::to_string(&file).expect("polynomial serializes")
}

pub fn save_polynomial(path: impl AsRef<Path>, poly: &MatrixPolynomial<f64>) -> Result<()> {
    let path = path.as_ref();
    let mut text = polynomial_to_json(poly);
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarFile {
    Bare(Vec<Quaternion<f64>>),
    Keyed { coeffs: Vec<Quaternion<f64>> },
}

/// Coefficients `a₀ … a_{k−1}` of a scalar polynomial. Accepts a bare array
/// of quadruples, `{"coeffs": [...]}`, or a polynomial file with `n = 1`.
pub fn load_scalar_coeffs(path: impl AsRef<Path>) -> Result<Vec<Quaternion<f64>>> {
    let path = path.as_ref();
    let origin = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    if let Ok(file) = serde_json::from_str::<ScalarFile>(&text) {
        let coeffs = match file {
            ScalarFile::Bare(c) | ScalarFile::Keyed { coeffs: c } => c,
        };
        if coeffs.is_empty() {
            return Err(Error::Degree { op: "scalar polynomial file", min: 1, k: 0 });
        }
        return Ok(coeffs);
    }
    let poly = parse_polynomial(&text, &origin)?;
    if poly.n() != 1 {
        return Err(Error::shape(format!("{origin}: scalar coefficients need n = 1, found n = {}", poly.n())));
    }
    Ok(poly.coeffs().iter().map(|a| a[(0, 0)]).collect())
}
