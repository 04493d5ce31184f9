//! Monic quaternion matrix polynomials and their block companion matrices.
//!
//! `L(ξ) = Iξᵏ + A_{k−1}ξ^{k−1} + ⋯ + A₁ξ + A₀` with `n × n` coefficients is
//! linearized by the `kn × kn` companion matrix
//!
//! ```text
//!       [  0    I    0   …    0      ]
//!       [  0    0    I   …    0      ]
//! C_L = [  ⋮              ⋱   ⋮      ]
//!       [  0    0    0   …    I      ]
//!       [ −A₀  −A₁  −A₂  …  −A_{k−1} ]
//! ```
//!
//! whose right spectrum is the right spectrum of `L`. Its square and cube keep
//! the shifted-identity pattern, with last block rows built from
//!
//! ```text
//! B_i = A_{k−1} A_i − A_{i−1}
//! C_i = −A_{k−1} B_i + A_{k−2} A_i − A_{i−2}      (A_{−1} = A_{−2} = 0)
//! ```

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{c_eigenpair_with_norm, c_spectral_norm};
use crate::qmat::QMatrix;
use crate::quat::Quaternion;
use crate::scalar::Real;
use crate::spectrum::{q_spectral_norm, right_spectrum, split_blocks, RightSpectrum};

const RESIDUAL_TOL: f64 = 1e-7;

/// Monic matrix polynomial `Iξᵏ + Σ_{i<k} A_i ξⁱ`; the leading identity is
/// implicit.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPolynomial<T> {
    n: usize,
    coeffs: Vec<QMatrix<T>>,
}

impl<T: Real> MatrixPolynomial<T> {
    /// `coeffs = [A₀, …, A_{k−1}]`, all square of the same size, `k >= 1`.
    pub fn new(coeffs: Vec<QMatrix<T>>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::Degree { op: "matrix polynomial", min: 1, k: 0 });
        };
        let n = first.rows();
        for (i, a) in coeffs.iter().enumerate() {
            if a.shape() != (n, n) {
                return Err(Error::shape(format!("coefficient A{i} is {}x{}, expected {n}x{n}", a.rows(), a.cols())));
            }
        }
        Ok(Self { n, coeffs })
    }

    /// Like [`new`](Self::new) but with an explicit leading coefficient, which
    /// must be exactly the identity.
    pub fn with_leading(coeffs: Vec<QMatrix<T>>, leading: &QMatrix<T>) -> Result<Self> {
        let poly = Self::new(coeffs)?;
        if leading.shape() != (poly.n, poly.n) {
            return Err(Error::shape("leading coefficient has the wrong size"));
        }
        if *leading != QMatrix::identity(poly.n) {
            return Err(Error::Monicity);
        }
        Ok(poly)
    }

    /// Scalar polynomial `μᵏ + a_{k−1}μ^{k−1} + ⋯ + a₀` as the `n = 1` case.
    pub fn scalar(coeffs: &[Quaternion<T>]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&a| QMatrix::scalar(a)).collect())
    }

    /// `Iξᵏ` with all lower coefficients zero.
    pub fn zero(k: usize, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::shape("block size must be positive"));
        }
        Self::new((0..k).map(|_| QMatrix::zeros(n, n)).collect())
    }

    /// Block size.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Degree.
    #[inline]
    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn coeffs(&self) -> &[QMatrix<T>] {
        &self.coeffs
    }

    /// `A_i`, with `A_i = 0` for negative `i` and `A_k = I`.
    pub fn coeff(&self, i: isize) -> QMatrix<T> {
        let k = self.k() as isize;
        if i < 0 || i > k {
            QMatrix::zeros(self.n, self.n)
        } else if i == k {
            QMatrix::identity(self.n)
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// `Σ_{i=0}^{k} A_i x λⁱ` (with `A_k = I`): the right evaluation residual
    /// of a candidate eigenpair.
    pub fn evaluate_right(&self, x: &[Quaternion<T>], lambda: Quaternion<T>) -> Result<Vec<Quaternion<T>>> {
        if x.len() != self.n {
            return Err(Error::shape(format!("vector of length {} for block size {}", x.len(), self.n)));
        }
        let mut acc = vec![Quaternion::zero(); self.n];
        let mut y = x.to_vec();
        for i in 0..=self.k() {
            if i == self.k() {
                for (a, yi) in acc.iter_mut().zip(&y) {
                    *a += *yi;
                }
            } else {
                let ai = &self.coeffs[i];
                for (r, a) in acc.iter_mut().enumerate() {
                    for (c, yc) in y.iter().enumerate() {
                        *a += ai[(r, c)] * *yc;
                    }
                }
                for yi in y.iter_mut() {
                    *yi = *yi * lambda;
                }
            }
        }
        Ok(acc)
    }

    pub fn cast<U: Real>(&self) -> MatrixPolynomial<U> {
        MatrixPolynomial { n: self.n, coeffs: self.coeffs.iter().map(QMatrix::cast).collect() }
    }
}

/// The sequences `B₀…B_{k−1}` and `C₀…C_{k−1}` of the last block rows of
/// `C_L²` and `C_L³`.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivedCoefficients<T> {
    pub b: Vec<QMatrix<T>>,
    pub c: Vec<QMatrix<T>>,
}

pub fn derived_coefficients<T: Real>(poly: &MatrixPolynomial<T>) -> Result<DerivedCoefficients<T>> {
    let k = poly.k();
    if k < 2 {
        return Err(Error::Degree { op: "derived coefficients", min: 2, k });
    }
    let lead = &poly.coeffs[k - 1];
    let next = &poly.coeffs[k - 2];
    let a = |i: isize| poly.coeff(i);
    let b: Vec<QMatrix<T>> = (0..k as isize).map(|i| &(lead * &a(i)) - &a(i - 1)).collect();
    let c: Vec<QMatrix<T>> = (0..k as isize)
        .map(|i| {
            let t = &(next * &a(i)) - &(lead * &b[i as usize]);
            &t - &a(i - 2)
        })
        .collect();
    Ok(DerivedCoefficients { b, c })
}

/// `C_Lᵐ` for `m ∈ {1, 2, 3}`, tied to the polynomial it came from.
#[derive(Clone, Debug)]
pub struct CompanionMatrix<'a, T> {
    pub poly: &'a MatrixPolynomial<T>,
    pub power: usize,
    pub matrix: QMatrix<T>,
}

pub fn build_companion<T: Real>(poly: &MatrixPolynomial<T>) -> CompanionMatrix<'_, T> {
    let (n, k) = (poly.n(), poly.k());
    let mut m = QMatrix::zeros(k * n, k * n);
    let eye = QMatrix::identity(n);
    for i in 0..k - 1 {
        m.set_block(i * n, (i + 1) * n, &eye).expect("block fits");
    }
    for (j, a) in poly.coeffs().iter().enumerate() {
        m.set_block((k - 1) * n, j * n, &(-a)).expect("block fits");
    }
    CompanionMatrix { poly, power: 1, matrix: m }
}

/// `C_Lᵐ` for `m ∈ {2, 3}`.
///
/// When `k >= m` the power is assembled directly from its block pattern:
/// block row `i < k − m` holds an identity at block column `i + m`, and the
/// bottom `m` block rows are `−A`, `B` and (for `m = 3`) `C`. For smaller `k`
/// it is the plain repeated product.
pub fn companion_power<'a, T: Real>(base: &CompanionMatrix<'a, T>, m: usize) -> Result<CompanionMatrix<'a, T>> {
    if !(m == 2 || m == 3) {
        return Err(Error::UnsupportedPower(m));
    }
    let poly = base.poly;
    let (n, k) = (poly.n(), poly.k());
    if k < m {
        let c1 = build_companion(poly).matrix;
        let mut acc = c1.clone();
        for _ in 1..m {
            acc = acc.matmul(&c1)?;
        }
        return Ok(CompanionMatrix { poly, power: m, matrix: acc });
    }

    let derived = derived_coefficients(poly)?;
    let mut out = QMatrix::zeros(k * n, k * n);
    let eye = QMatrix::identity(n);
    for i in 0..k - m {
        out.set_block(i * n, (i + m) * n, &eye)?;
    }
    let mut tail: Vec<Vec<QMatrix<T>>> = vec![poly.coeffs().iter().map(|a| -a).collect(), derived.b];
    if m == 3 {
        tail.push(derived.c);
    }
    for (t, row) in tail.iter().enumerate() {
        let r = k - m + t;
        for (j, blk) in row.iter().enumerate() {
            out.set_block(r * n, j * n, blk)?;
        }
    }
    Ok(CompanionMatrix { poly, power: m, matrix: out })
}

/// The `(k−1)n × (k−1)n` leading block of `C_L²`: identities at block
/// `(i, i+2)` for `i <= k−4`, a zero block row, then `[−A₀ … −A_{k−2}]`.
pub fn proof_matrix_s<T: Real>(poly: &MatrixPolynomial<T>) -> Result<QMatrix<T>> {
    shifted_proof_matrix(poly, 2, 4, "proof matrix S")
}

/// The `(k−2)n × (k−2)n` leading block of `C_L³`: identities at block
/// `(i, i+3)` for `i <= k−6`, two zero block rows, then `[−A₀ … −A_{k−3}]`.
pub fn proof_matrix_n<T: Real>(poly: &MatrixPolynomial<T>) -> Result<QMatrix<T>> {
    shifted_proof_matrix(poly, 3, 5, "proof matrix N")
}

fn shifted_proof_matrix<T: Real>(poly: &MatrixPolynomial<T>, shift: usize, min_k: usize, op: &'static str) -> Result<QMatrix<T>> {
    let (n, k) = (poly.n(), poly.k());
    if k < min_k {
        return Err(Error::Degree { op, min: min_k, k });
    }
    let blocks = k - shift + 1;
    let mut out = QMatrix::zeros(blocks * n, blocks * n);
    let eye = QMatrix::identity(n);
    for i in 0..blocks.saturating_sub(shift) {
        out.set_block(i * n, (i + shift) * n, &eye)?;
    }
    for j in 0..blocks {
        out.set_block((blocks - 1) * n, j * n, &(-&poly.coeffs()[j]))?;
    }
    Ok(out)
}

/// Copies of the four blocks `(M₁₁, M₁₂, M₂₁, M₂₂)` of `M` split after
/// `row_split` rows and `col_split` columns.
#[allow(clippy::type_complexity)]
pub fn block_partition<T: Real>(
    m: &QMatrix<T>,
    row_split: usize,
    col_split: usize,
) -> Result<(QMatrix<T>, QMatrix<T>, QMatrix<T>, QMatrix<T>)> {
    let [a, b, c, d] = split_blocks(m, row_split, col_split)?;
    Ok((a, b, c, d))
}

/// Right spectrum of `L`, read off the companion matrix.
pub fn polynomial_right_spectrum<T: Real>(poly: &MatrixPolynomial<T>) -> Result<RightSpectrum<T>> {
    right_spectrum(&build_companion(poly).matrix)
}

/// One right eigenpair of `L` with its evaluation residual.
#[derive(Clone, Debug, Serialize)]
#[serde(bound = "T: Real + Serialize")]
pub struct PolynomialEigenpair<T> {
    pub lambda: Complex<T>,
    /// Unit-norm right eigenvector (first block of the companion eigenvector).
    pub x: Vec<Quaternion<T>>,
    /// `‖A₀x + A₁xλ + ⋯ + xλᵏ‖`.
    pub residual: T,
    /// `1e-7 · (1 + Σ‖A_i‖₂) · max(1, |λ|ᵏ)`.
    pub threshold: T,
}

impl<T: Real> PolynomialEigenpair<T> {
    pub fn passes(&self) -> bool {
        self.residual <= self.threshold
    }
}

/// Right eigenpairs of `L`, one per representative of its right spectrum.
///
/// A complex eigenvector `(u; w)` of `χ(C_L)` maps to the quaternion vector
/// `u − conj(w)·j`, whose first `n` entries are an eigenvector of `L`.
pub fn polynomial_eigenpairs<T: Real>(poly: &MatrixPolynomial<T>) -> Result<Vec<PolynomialEigenpair<T>>> {
    let (n, k) = (poly.n(), poly.k());
    let comp = build_companion(poly).matrix;
    let spec = right_spectrum(&comp)?;
    let chi = comp.complex_adjoint();
    let chi_norm = c_spectral_norm(&chi)?;
    let coeff_norms = poly.coeffs().iter().map(q_spectral_norm).collect::<Result<Vec<T>>>()?;
    let scale = T::one() + coeff_norms.into_iter().sum::<T>();
    let dim = k * n;

    spec.representatives
        .iter()
        .map(|&lambda| {
            let v = c_eigenpair_with_norm(&chi, lambda, chi_norm)?;
            let mut x: Vec<Quaternion<T>> =
                (0..n).map(|i| Quaternion::new(v[i].re, v[i].im, -v[i + dim].re, v[i + dim].im)).collect();
            let norm = x.iter().map(|q| q.norm_sqr()).sum::<T>().sqrt();
            if norm == T::zero() {
                return Err(Error::NumericalConsistency("companion eigenvector with a zero leading block".into()));
            }
            for q in x.iter_mut() {
                *q = *q / norm;
            }
            let r = poly.evaluate_right(&x, Quaternion::from_complex(lambda))?;
            let residual = r.iter().map(|q| q.norm_sqr()).sum::<T>().sqrt();
            let threshold = T::lit(RESIDUAL_TOL) * scale * T::one().max(lambda.norm().powi(k as i32));
            Ok(PolynomialEigenpair { lambda, x, residual, threshold })
        })
        .collect()
}

#[cfg(test)]
fn is_identity<T: Real>(m: &QMatrix<T>) -> bool {
    m.is_square() && *m == QMatrix::identity(m.rows())
}
