//! Closed-form upper bounds on the moduli of right eigenvalues.
//!
//! Every bound is assembled from spectral norms of the coefficients `A_i` and
//! of the derived sequences `B_i`, `C_i` (see [`crate::companion`]):
//!
//! * `lemma33`, `lemma34`: bounds on `‖S‖₂²` and `‖N‖₂²` for the leading
//!   blocks of `C_L²` and `C_L³`.
//! * `thm35`: square root of a 2×2 Perron bound on `ρ_r(C_L²)`.
//! * `thm36`: fourth root of a bound on `‖C_L²‖₂²`.
//! * `thm37`: cube root of a 2×2 Perron bound on `ρ_r(C_L³)`.
//! * `b1_baseline`: the older single-companion disk bound.
//!
//! Degree floors: `lemma33` k ≥ 3, `thm35`/`thm36` k ≥ 4, `lemma34`/`thm37`
//! k ≥ 5, `b1_baseline` k ≥ 2. Below its floor a bound is refused rather
//! than evaluated over an empty or negative index range.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::companion::{derived_coefficients, MatrixPolynomial};
use crate::error::{Error, Result};
use crate::qmat::QMatrix;
use crate::quat::Quaternion;
use crate::scalar::Real;
use crate::spectrum::q_spectral_norm;

/// Discriminants down to this (times the magnitude of their leading term)
/// are rounding noise and are clamped to zero.
const DISCRIMINANT_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    Thm35,
    Thm36,
    Thm37,
    B1Baseline,
    Lemma33,
    Lemma34,
    Cor35Scalar,
    Cor36Scalar,
    Cor37Scalar,
}

impl BoundName {
    /// The four eigenvalue bounds reported by [`all_bounds`], in tie-break
    /// order.
    pub const EIGENVALUE_BOUNDS: [BoundName; 4] = [BoundName::Thm35, BoundName::Thm36, BoundName::Thm37, BoundName::B1Baseline];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::Lemma33 => "lemma33",
            BoundName::Lemma34 => "lemma34",
            BoundName::Thm35 => "thm35",
            BoundName::Thm36 => "thm36",
            BoundName::Thm37 => "thm37",
            BoundName::B1Baseline => "b1_baseline",
            BoundName::Cor35Scalar => "cor35_scalar",
            BoundName::Cor36Scalar => "cor36_scalar",
            BoundName::Cor37Scalar => "cor37_scalar",
        }
    }

    /// Column label used in CSV output (`b1` rather than `b1_baseline`).
    pub fn short(self) -> &'static str {
        match self {
            BoundName::B1Baseline => "b1",
            other => other.as_str(),
        }
    }

    /// Smallest degree `k` for which the bound is defined.
    pub fn min_degree(self) -> usize {
        match self {
            BoundName::B1Baseline => 2,
            BoundName::Lemma33 => 3,
            BoundName::Thm35 | BoundName::Thm36 | BoundName::Cor35Scalar | BoundName::Cor36Scalar => 4,
            BoundName::Lemma34 | BoundName::Thm37 | BoundName::Cor37Scalar => 5,
        }
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "lemma33" => BoundName::Lemma33,
            "lemma34" => BoundName::Lemma34,
            "thm35" => BoundName::Thm35,
            "thm36" => BoundName::Thm36,
            "thm37" => BoundName::Thm37,
            "b1" | "b1_baseline" => BoundName::B1Baseline,
            "cor35" | "cor35_scalar" => BoundName::Cor35Scalar,
            "cor36" | "cor36_scalar" => BoundName::Cor36Scalar,
            "cor37" | "cor37_scalar" => BoundName::Cor37Scalar,
            other => return Err(Error::Parameter(format!("unknown bound name {other:?}"))),
        })
    }
}

/// Which scalar corollary to evaluate in [`scalar_bound`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Corollary {
    Cor35,
    Cor36,
    Cor37,
}

impl Corollary {
    pub const ALL: [Corollary; 3] = [Corollary::Cor35, Corollary::Cor36, Corollary::Cor37];

    pub fn bound_name(self) -> BoundName {
        match self {
            Corollary::Cor35 => BoundName::Cor35Scalar,
            Corollary::Cor36 => BoundName::Cor36Scalar,
            Corollary::Cor37 => BoundName::Cor37Scalar,
        }
    }

    fn matrix_bound(self) -> BoundName {
        match self {
            Corollary::Cor35 => BoundName::Thm35,
            Corollary::Cor36 => BoundName::Thm36,
            Corollary::Cor37 => BoundName::Thm37,
        }
    }
}

/// A bound value together with the named quantities it was built from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport<T> {
    pub bound_name: BoundName,
    pub value: T,
    pub intermediates: BTreeMap<String, T>,
    pub degree_k: usize,
    pub block_size_n: usize,
}

impl<T: Real> BoundReport<T> {
    fn new(bound_name: BoundName, poly: &MatrixPolynomial<T>, value: T, intermediates: &[(&str, T)]) -> Self {
        Self {
            bound_name,
            value,
            intermediates: intermediates.iter().map(|(k, v)| ((*k).to_owned(), *v)).collect(),
            degree_k: poly.k(),
            block_size_n: poly.n(),
        }
    }

    pub fn intermediate(&self, name: &str) -> Option<T> {
        self.intermediates.get(name).copied()
    }
}

/// Outcome of one bound inside [`all_bounds`].
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BoundEntry<T> {
    Computed(BoundReport<T>),
    Skipped { bound_name: BoundName, reason: String },
    Failed { bound_name: BoundName, error: String },
}

impl<T: Real> BoundEntry<T> {
    pub fn bound_name(&self) -> BoundName {
        match self {
            BoundEntry::Computed(r) => r.bound_name,
            BoundEntry::Skipped { bound_name, .. } | BoundEntry::Failed { bound_name, .. } => *bound_name,
        }
    }

    pub fn value(&self) -> Option<T> {
        match self {
            BoundEntry::Computed(r) => Some(r.value),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundSet<T> {
    pub entries: Vec<BoundEntry<T>>,
    /// Smallest computed value; ties go to the earlier name in
    /// `thm35 < thm36 < thm37 < b1`.
    pub tightest: Option<BoundName>,
}

impl<T: Real> BoundSet<T> {
    pub fn get(&self, name: BoundName) -> Option<&BoundEntry<T>> {
        self.entries.iter().find(|e| e.bound_name() == name)
    }

    pub fn value(&self, name: BoundName) -> Option<T> {
        self.get(name).and_then(BoundEntry::value)
    }

    pub fn tightest_value(&self) -> Option<T> {
        self.tightest.and_then(|n| self.value(n))
    }
}

fn check_degree(poly_k: usize, name: BoundName) -> Result<()> {
    let min = name.min_degree();
    if poly_k < min {
        return Err(Error::Degree { op: name.as_str(), min, k: poly_k });
    }
    Ok(())
}

fn checked_sqrt<T: Real>(op: &'static str, disc: T, magnitude: T) -> Result<T> {
    if disc >= T::zero() {
        return Ok(disc.sqrt());
    }
    if disc >= -T::lit(DISCRIMINANT_SLACK) * magnitude.max(T::one()) {
        return Ok(T::zero());
    }
    Err(Error::NegativeDiscriminant { op, value: disc.as_f64() })
}

/// Spectral norms of the coefficients and, when needed, of `B_i`, `C_i`.
struct Ingredients<T> {
    k: usize,
    a: Vec<T>,
    b: Vec<QMatrix<T>>,
    c: Vec<QMatrix<T>>,
    b_norm: Vec<T>,
    c_norm: Vec<T>,
}

impl<T: Real> Ingredients<T> {
    fn coefficients(poly: &MatrixPolynomial<T>) -> Result<Self> {
        let a = poly.coeffs().iter().map(q_spectral_norm).collect::<Result<Vec<_>>>()?;
        Ok(Self { k: poly.k(), a, b: Vec::new(), c: Vec::new(), b_norm: Vec::new(), c_norm: Vec::new() })
    }

    fn full(poly: &MatrixPolynomial<T>) -> Result<Self> {
        let mut ing = Self::coefficients(poly)?;
        if poly.k() >= 2 {
            let d = derived_coefficients(poly)?;
            ing.b_norm = d.b.iter().map(q_spectral_norm).collect::<Result<_>>()?;
            ing.c_norm = d.c.iter().map(q_spectral_norm).collect::<Result<_>>()?;
            ing.b = d.b;
            ing.c = d.c;
        }
        Ok(ing)
    }

    fn sum_sq(v: &[T], lo: usize, hi_inclusive: usize) -> T {
        v[lo..=hi_inclusive].iter().map(|x| *x * *x).sum()
    }
}

/// `(value, ξ₀)` with `ξ₀ = Σ_{i=0}^{k−2} ‖A_i‖₂²`.
fn lemma33_core<T: Real>(ing: &Ingredients<T>) -> Result<(T, T)> {
    let k = ing.k;
    let xi0 = Ingredients::sum_sq(&ing.a, 0, k - 2);
    let one_plus = T::one() + xi0;
    let head = ing.a[0] * ing.a[0] + ing.a[1] * ing.a[1];
    let disc = one_plus * one_plus - T::lit(4.0) * head;
    let root = checked_sqrt("lemma33", disc, one_plus * one_plus)?;
    Ok(((one_plus + root) * T::lit(0.5), xi0))
}

/// `(value, α)` with `α = Σ_{i=0}^{k−3} ‖A_i‖₂²`.
fn lemma34_core<T: Real>(ing: &Ingredients<T>) -> Result<(T, T)> {
    let k = ing.k;
    let alpha = Ingredients::sum_sq(&ing.a, 0, k - 3);
    let one_plus = T::one() + alpha;
    let head = ing.a[0] * ing.a[0] + ing.a[1] * ing.a[1] + ing.a[2] * ing.a[2];
    let disc = one_plus * one_plus - T::lit(4.0) * head;
    let root = checked_sqrt("lemma34", disc, one_plus * one_plus)?;
    Ok(((one_plus + root) * T::lit(0.5), alpha))
}

/// `(½[Σ(‖X_i‖² + ‖Y_i‖²) + √((Σ(‖X_i‖² − ‖Y_i‖²))² + 4‖Σ X_i Y_iᴴ‖₂²)])^{1/2}`
/// over `i ∈ lo..=hi`: a bound on `‖[X_lo … X_hi; Y_lo … Y_hi]‖₂`.
fn stacked_row_bound<T: Real>(
    x: &[QMatrix<T>],
    x_norm: &[T],
    y: &[QMatrix<T>],
    y_norm: &[T],
    lo: usize,
    hi: usize,
) -> Result<T> {
    let sx = Ingredients::sum_sq(x_norm, lo, hi);
    let sy = Ingredients::sum_sq(y_norm, lo, hi);
    let mut cross = &x[lo] * &y[lo].conj_transpose();
    for i in lo + 1..=hi {
        cross = &cross + &(&x[i] * &y[i].conj_transpose());
    }
    let cn = q_spectral_norm(&cross)?;
    let diff = sx - sy;
    let disc = diff * diff + T::lit(4.0) * cn * cn;
    Ok(((sx + sy + disc.sqrt()) * T::lit(0.5)).sqrt())
}

fn lemma33_from<T: Real>(poly: &MatrixPolynomial<T>, ing: &Ingredients<T>) -> Result<BoundReport<T>> {
    check_degree(poly.k(), BoundName::Lemma33)?;
    let (value, xi0) = lemma33_core(ing)?;
    Ok(BoundReport::new(BoundName::Lemma33, poly, value, &[("xi0", xi0)]))
}

fn lemma34_from<T: Real>(poly: &MatrixPolynomial<T>, ing: &Ingredients<T>) -> Result<BoundReport<T>> {
    check_degree(poly.k(), BoundName::Lemma34)?;
    let (value, alpha) = lemma34_core(ing)?;
    Ok(BoundReport::new(BoundName::Lemma34, poly, value, &[("alpha", alpha)]))
}

fn thm35_from<T: Real>(poly: &MatrixPolynomial<T>, ing: &Ingredients<T>) -> Result<BoundReport<T>> {
    check_degree(poly.k(), BoundName::Thm35)?;
    let k = ing.k;
    let (l33, xi0) = lemma33_core(ing)?;
    let xi1 = l33.sqrt();
    let xi2 = Ingredients::sum_sq(&ing.b_norm, 0, k - 2).sqrt();
    let b_last = ing.b_norm[k - 1];
    let a_last = ing.a[k - 1];
    let off = T::lit(4.0) * xi2 * (T::one() + a_last * a_last).sqrt();
    let d = xi1 - b_last;
    let rho = (xi1 + b_last + (d * d + off).sqrt()) * T::lit(0.5);
    Ok(BoundReport::new(
        BoundName::Thm35,
        poly,
        rho.sqrt(),
        &[("xi0", xi0), ("xi1", xi1), ("xi2", xi2), ("norm_b_last", b_last), ("norm_a_last", a_last)],
    ))
}

fn thm36_from<T: Real>(poly: &MatrixPolynomial<T>, ing: &Ingredients<T>) -> Result<BoundReport<T>> {
    check_degree(poly.k(), BoundName::Thm36)?;
    let k = ing.k;
    let coeffs = poly.coeffs();
    let beta1 = stacked_row_bound(coeffs, &ing.a, &ing.b, &ing.b_norm, 0, k - 3)?;
    let beta2 = stacked_row_bound(coeffs, &ing.a, &ing.b, &ing.b_norm, k - 2, k - 1)?;
    let s = beta1 * beta1 + beta2 * beta2;
    let inner = s * s + T::lit(4.0) * (T::lit(2.0) * beta1 * beta2 + T::one());
    let norm_sq = T::one() + (s + inner.sqrt()) * T::lit(0.5);
    Ok(BoundReport::new(BoundName::Thm36, poly, norm_sq.sqrt().sqrt(), &[("beta1", beta1), ("beta2", beta2)]))
}

fn thm37_from<T: Real>(poly: &MatrixPolynomial<T>, ing: &Ingredients<T>) -> Result<BoundReport<T>> {
    check_degree(poly.k(), BoundName::Thm37)?;
    let k = ing.k;
    let (l34, alpha) = lemma34_core(ing)?;
    let eta1 = l34.sqrt();
    let eta2 = stacked_row_bound(&ing.b, &ing.b_norm, &ing.c, &ing.c_norm, k - 2, k - 1)?;
    let tau2 = stacked_row_bound(&ing.b, &ing.b_norm, &ing.c, &ing.c_norm, 0, k - 3)?;
    let tau1 = (ing.a[k - 1] * ing.a[k - 1] + ing.a[k - 2] * ing.a[k - 2] + T::one()).sqrt();
    let d = eta1 - eta2;
    let rho = (eta1 + eta2 + (d * d + T::lit(4.0) * tau1 * tau2).sqrt()) * T::lit(0.5);
    Ok(BoundReport::new(
        BoundName::Thm37,
        poly,
        rho.cbrt(),
        &[("alpha", alpha), ("eta1", eta1), ("eta2", eta2), ("tau1", tau1), ("tau2", tau2)],
    ))
}

fn b1_from<T: Real>(poly: &MatrixPolynomial<T>, ing: &Ingredients<T>) -> Result<BoundReport<T>> {
    check_degree(poly.k(), BoundName::B1Baseline)?;
    let k = ing.k;
    let a_last = ing.a[k - 1];
    let lower = Ingredients::sum_sq(&ing.a, 0, k - 2);
    let d = a_last - T::one();
    let value = (T::one() + a_last + (d * d + T::lit(4.0) * lower.sqrt()).sqrt()) * T::lit(0.5);
    Ok(BoundReport::new(BoundName::B1Baseline, poly, value, &[("norm_a_last", a_last), ("sum_sq_lower", lower)]))
}

fn compute<T: Real>(poly: &MatrixPolynomial<T>, ing: &Ingredients<T>, name: BoundName) -> Result<BoundReport<T>> {
    match name {
        BoundName::Lemma33 => lemma33_from(poly, ing),
        BoundName::Lemma34 => lemma34_from(poly, ing),
        BoundName::Thm35 => thm35_from(poly, ing),
        BoundName::Thm36 => thm36_from(poly, ing),
        BoundName::Thm37 => thm37_from(poly, ing),
        BoundName::B1Baseline => b1_from(poly, ing),
        BoundName::Cor35Scalar | BoundName::Cor36Scalar | BoundName::Cor37Scalar => {
            Err(Error::Parameter(format!("{name} is a scalar corollary; use scalar_bound")))
        }
    }
}

fn needs_derived(name: BoundName) -> bool {
    !matches!(name, BoundName::Lemma33 | BoundName::Lemma34 | BoundName::B1Baseline)
}

fn single<T: Real>(poly: &MatrixPolynomial<T>, name: BoundName) -> Result<BoundReport<T>> {
    check_degree(poly.k(), name)?;
    let ing = if needs_derived(name) { Ingredients::full(poly)? } else { Ingredients::coefficients(poly)? };
    compute(poly, &ing, name)
}

/// Upper bound on `‖S‖₂²`: `½(1 + ξ₀ + √((1 + ξ₀)² − 4(‖A₀‖₂² + ‖A₁‖₂²)))`.
pub fn lemma33_value<T: Real>(poly: &MatrixPolynomial<T>) -> Result<BoundReport<T>> {
    single(poly, BoundName::Lemma33)
}

/// Upper bound on `‖N‖₂²`: `½(1 + α + √((1 + α)² − 4(‖A₀‖₂² + ‖A₁‖₂² + ‖A₂‖₂²)))`.
pub fn lemma34_value<T: Real>(poly: &MatrixPolynomial<T>) -> Result<BoundReport<T>> {
    single(poly, BoundName::Lemma34)
}

pub fn thm35_bound<T: Real>(poly: &MatrixPolynomial<T>) -> Result<BoundReport<T>> {
    single(poly, BoundName::Thm35)
}

pub fn thm36_bound<T: Real>(poly: &MatrixPolynomial<T>) -> Result<BoundReport<T>> {
    single(poly, BoundName::Thm36)
}

pub fn thm37_bound<T: Real>(poly: &MatrixPolynomial<T>) -> Result<BoundReport<T>> {
    single(poly, BoundName::Thm37)
}

pub fn b1_baseline<T: Real>(poly: &MatrixPolynomial<T>) -> Result<BoundReport<T>> {
    single(poly, BoundName::B1Baseline)
}

/// Bound on the zeros of `μᵏ + a_{k−1}μ^{k−1} + ⋯ + a₀`, evaluated as the
/// matrix bound with `n = 1`.
pub fn scalar_bound<T: Real>(coeffs: &[Quaternion<T>], which: Corollary) -> Result<BoundReport<T>> {
    if coeffs.is_empty() {
        return Err(Error::Degree { op: which.bound_name().as_str(), min: which.bound_name().min_degree(), k: 0 });
    }
    let poly = MatrixPolynomial::scalar(coeffs)?;
    check_degree(poly.k(), which.bound_name())?;
    let mut report = single(&poly, which.matrix_bound())?;
    report.bound_name = which.bound_name();
    Ok(report)
}

/// Evaluates the requested bounds, recording degree skips and numerical
/// failures per entry instead of returning an error.
pub fn selected_bounds<T: Real>(poly: &MatrixPolynomial<T>, names: &[BoundName]) -> BoundSet<T> {
    let ing = if poly.k() >= 2 { Ingredients::full(poly) } else { Ingredients::coefficients(poly) };
    let entries: Vec<BoundEntry<T>> = names
        .iter()
        .map(|&name| {
            if poly.k() < name.min_degree() {
                return BoundEntry::Skipped {
                    bound_name: name,
                    reason: format!("degree k = {} is below the floor k >= {}", poly.k(), name.min_degree()),
                };
            }
            match ing.as_ref() {
                Err(e) => BoundEntry::Failed { bound_name: name, error: e.to_string() },
                Ok(ing) => match compute(poly, ing, name) {
                    Ok(r) => BoundEntry::Computed(r),
                    Err(e) => BoundEntry::Failed { bound_name: name, error: e.to_string() },
                },
            }
        })
        .collect();

    let mut order: Vec<&BoundReport<T>> = entries
        .iter()
        .filter_map(|e| match e {
            BoundEntry::Computed(r) if BoundName::EIGENVALUE_BOUNDS.contains(&r.bound_name) => Some(r),
            _ => None,
        })
        .collect();
    order.sort_by_key(|r| r.bound_name);
    let mut tightest: Option<&BoundReport<T>> = None;
    for r in order {
        if tightest.is_none_or(|t| r.value < t.value) {
            tightest = Some(r);
        }
    }
    let tightest = tightest.map(|r| r.bound_name);
    BoundSet { entries, tightest }
}

/// `thm35`, `thm36`, `thm37` and `b1_baseline` for `poly`.
pub fn all_bounds<T: Real>(poly: &MatrixPolynomial<T>) -> BoundSet<T> {
    selected_bounds(poly, &BoundName::EIGENVALUE_BOUNDS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::companion::{polynomial_right_spectrum, proof_matrix_n, proof_matrix_s};
    use crate::rng::SplitMix64;
    use num_traits::One;

    type Q = Quaternion<f64>;
    type M = QMatrix<f64>;
    type P = MatrixPolynomial<f64>;

    fn rand_poly(k: usize, n: usize, seed: u64) -> P {
        let mut r = SplitMix64::new(seed);
        P::new(
            (0..k)
                .map(|_| M::from_fn(n, n, |_, _| Q::new(r.symmetric(1.0), r.symmetric(1.0), r.symmetric(1.0), r.symmetric(1.0))))
                .collect(),
        )
        .unwrap()
    }

    fn with_single(k: usize, idx: usize, q: Q) -> P {
        let mut c = vec![Q::default(); k];
        c[idx] = q;
        P::scalar(&c).unwrap()
    }

    #[test]
    fn lemma33_closed_forms() {
        let r = lemma33_value(&P::zero(4, 2).unwrap()).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.intermediate("xi0"), Some(0.0));

        let r = lemma33_value(&with_single(4, 0, Q::real(2.0))).unwrap();
        assert!((r.intermediate("xi0").unwrap() - 4.0).abs() < 1e-14);
        assert!((r.value - 4.0).abs() < 1e-14);

        assert!(matches!(lemma33_value(&P::zero(2, 1).unwrap()), Err(Error::Degree { min: 3, .. })));
    }

    #[test]
    fn lemma34_closed_forms() {
        assert_eq!(lemma34_value(&P::zero(5, 1).unwrap()).unwrap().value, 1.0);
        // A₃ sits inside α once k − 3 >= 3; the discriminant is then a perfect square
        let q = Q::new(0.0, 1.2, -0.5, 0.0);
        let r = lemma34_value(&with_single(6, 3, q)).unwrap();
        assert!((r.value - (1.0 + q.norm_sqr())).abs() < 1e-12);
        // with k = 5 it lies outside the sum
        assert_eq!(lemma34_value(&with_single(5, 3, q)).unwrap().value, 1.0);
        // single A₀: ½(1 + |a₀|² + |1 − |a₀|²|) = max(1, |a₀|²)
        for a in [0.5, 1.7] {
            let r = lemma34_value(&with_single(5, 0, Q::real(a))).unwrap();
            assert!((r.value - (a * a).max(1.0)).abs() < 1e-12);
        }
        assert!(matches!(lemma34_value(&P::zero(4, 1).unwrap()), Err(Error::Degree { min: 5, .. })));
    }

    #[test]
    fn lemma_values_dominate_proof_matrix_norms() {
        for seed in 0..10 {
            let p = rand_poly(5, 2, seed);
            let s = q_spectral_norm(&proof_matrix_s(&p).unwrap()).unwrap();
            assert!(s * s <= lemma33_value(&p).unwrap().value + 1e-9);
            let p = rand_poly(6, 1, 50 + seed);
            let nn = q_spectral_norm(&proof_matrix_n(&p).unwrap()).unwrap();
            assert!(nn * nn <= lemma34_value(&p).unwrap().value + 1e-9);
        }
    }

    #[test]
    fn zero_polynomial_anchors() {
        let p = P::zero(5, 2).unwrap();
        assert_eq!(thm35_bound(&p).unwrap().value, 1.0);
        assert_eq!(thm36_bound(&p).unwrap().value, 2f64.powf(0.25));
        assert_eq!(thm37_bound(&p).unwrap().value, 1.0);
        assert_eq!(b1_baseline(&p).unwrap().value, 1.0);
        let t37 = thm37_bound(&p).unwrap();
        assert_eq!(t37.intermediate("eta1"), Some(1.0));
        assert_eq!(t37.intermediate("eta2"), Some(0.0));
        assert_eq!(t37.intermediate("tau1"), Some(1.0));
        assert_eq!(t37.intermediate("tau2"), Some(0.0));
    }

    #[test]
    fn b1_closed_forms() {
        assert_eq!(b1_baseline(&P::zero(3, 1).unwrap()).unwrap().value, 1.0);
        assert_eq!(b1_baseline(&with_single(3, 2, Q::j())).unwrap().value, 1.0);
        let r = b1_baseline(&P::scalar(&[Q::one(), Q::default()]).unwrap()).unwrap();
        assert!((r.value - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-14);
        assert!(matches!(b1_baseline(&P::zero(1, 1).unwrap()), Err(Error::Degree { .. })));
    }

    #[test]
    fn degree_floors() {
        assert!(matches!(thm35_bound(&P::zero(3, 1).unwrap()), Err(Error::Degree { min: 4, .. })));
        assert!(matches!(thm36_bound(&P::zero(3, 1).unwrap()), Err(Error::Degree { min: 4, .. })));
        assert!(matches!(thm37_bound(&P::zero(4, 1).unwrap()), Err(Error::Degree { min: 5, .. })));
        assert!(matches!(scalar_bound(&[Q::one(); 4], Corollary::Cor37), Err(Error::Degree { min: 5, .. })));
        assert!(matches!(scalar_bound::<f64>(&[], Corollary::Cor35), Err(Error::Degree { .. })));
    }

    #[test]
    fn thm35_shares_lemma33() {
        let p = rand_poly(6, 2, 3);
        let l = lemma33_value(&p).unwrap();
        let t = thm35_bound(&p).unwrap();
        assert_eq!(t.intermediate("xi1").unwrap().to_bits(), l.value.sqrt().to_bits());
        assert_eq!(t.intermediate("xi0"), l.intermediate("xi0"));
    }

    #[test]
    fn thm37_with_single_leading_coefficient() {
        // only a₄ = q: b_i = q a_i − a_{i−1} and c_i collapse to a handful of terms
        let q = Q::new(0.3, -0.4, 0.8, 0.1);
        let p = with_single(5, 4, q);
        let r = thm37_bound(&p).unwrap();
        let m = q.abs();
        // b = (0, 0, 0, 0, m²), c = (0, 0, 0, 0, m³) after taking moduli
        let (b4, c4) = (m * m, m * m * m);
        let eta2 = (0.5 * (b4 * b4 + c4 * c4 + ((b4 * b4 - c4 * c4).powi(2) + 4.0 * (b4 * c4).powi(2)).sqrt())).sqrt();
        let tau1 = (m * m + 1.0).sqrt();
        let expect = (0.5 * (1.0 + eta2 + ((1.0 - eta2).powi(2)).sqrt())).cbrt();
        assert!((r.intermediate("eta2").unwrap() - eta2).abs() < 1e-12);
        assert!((r.intermediate("tau1").unwrap() - tau1).abs() < 1e-12);
        assert_eq!(r.intermediate("tau2"), Some(0.0));
        assert!((r.value - expect).abs() < 1e-12);
    }

    #[test]
    fn scalar_reports_match_matrix_path() {
        let coeffs = [Q::one(), Q::k(), Q::j(), Q::i()];
        let p = P::scalar(&coeffs).unwrap();
        let s35 = scalar_bound(&coeffs, Corollary::Cor35).unwrap();
        let m35 = thm35_bound(&p).unwrap();
        assert_eq!(s35.bound_name, BoundName::Cor35Scalar);
        assert_eq!(s35.value, m35.value);
        assert_eq!(s35.intermediates, m35.intermediates);
        let rho = polynomial_right_spectrum(&p).unwrap().radius;
        assert!(rho <= s35.value);
        assert!(rho <= scalar_bound(&coeffs, Corollary::Cor36).unwrap().value);
    }

    #[test]
    fn all_bounds_floor_logic() {
        let set = all_bounds(&P::zero(3, 1).unwrap());
        for name in [BoundName::Thm35, BoundName::Thm36, BoundName::Thm37] {
            assert!(matches!(set.get(name), Some(BoundEntry::Skipped { .. })));
        }
        assert_eq!(set.value(BoundName::B1Baseline), Some(1.0));
        assert_eq!(set.tightest, Some(BoundName::B1Baseline));

        let set = all_bounds(&P::zero(5, 1).unwrap());
        assert_eq!(set.value(BoundName::Thm35), Some(1.0));
        assert_eq!(set.value(BoundName::Thm36), Some(2f64.powf(0.25)));
        assert_eq!(set.value(BoundName::Thm37), Some(1.0));
        assert_eq!(set.value(BoundName::B1Baseline), Some(1.0));
        assert_eq!(set.tightest, Some(BoundName::Thm35));
        assert_eq!(set.tightest_value(), Some(1.0));
    }

    #[test]
    fn bounds_dominate_radius() {
        for seed in 0..10 {
            let p = rand_poly(6, 2, 300 + seed);
            let rho = polynomial_right_spectrum(&p).unwrap().radius;
            let set = all_bounds(&p);
            for name in BoundName::EIGENVALUE_BOUNDS {
                let v = set.value(name).unwrap();
                assert!(rho <= v + 1e-8 * v.max(1.0), "seed {seed} {name}: {rho} > {v}");
            }
        }
    }

    #[test]
    fn intermediates_are_nonnegative() {
        for seed in 0..5 {
            let p = rand_poly(7, 2, 40 + seed);
            for entry in all_bounds(&p).entries {
                let BoundEntry::Computed(r) = entry else { panic!("expected a computed bound") };
                assert!(r.value.is_finite() && r.value >= 0.0);
                assert!(r.intermediates.values().all(|v| *v >= 0.0));
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for name in [
            BoundName::Lemma33,
            BoundName::Lemma34,
            BoundName::Thm35,
            BoundName::Thm36,
            BoundName::Thm37,
            BoundName::B1Baseline,
            BoundName::Cor35Scalar,
            BoundName::Cor36Scalar,
            BoundName::Cor37Scalar,
        ] {
            assert_eq!(name.as_str().parse::<BoundName>().unwrap(), name);
            assert_eq!(serde_json::to_value(name).unwrap(), name.as_str());
        }
        assert_eq!("b1".parse::<BoundName>().unwrap(), BoundName::B1Baseline);
        assert!("thm99".parse::<BoundName>().is_err());
    }

    #[test]
    fn single_precision_anchors() {
        let p = MatrixPolynomial::<f32>::zero(5, 1).unwrap();
        assert_eq!(thm35_bound(&p).unwrap().value, 1.0);
        assert!((thm36_bound(&p).unwrap().value - 2f32.powf(0.25)).abs() < 1e-6);
        assert_eq!(thm37_bound(&p).unwrap().value, 1.0);
    }

    #[test]
    fn discriminant_guard() {
        assert_eq!(checked_sqrt("t", -1e-13, 1.0).unwrap(), 0.0);
        assert!(matches!(checked_sqrt("t", -1e-6, 1.0), Err(Error::NegativeDiscriminant { .. })));
        assert_eq!(checked_sqrt("t", 4.0, 1.0).unwrap(), 2.0);
    }
}
