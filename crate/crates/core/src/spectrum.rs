//! Right eigenvalues, right spectral radius and the 2-norm of quaternion
//! matrices, all computed through the complex adjoint.
//!
//! For `A ∈ M_n(ℍ)` the adjoint `χ(A)` has `2n` eigenvalues that come in
//! conjugate pairs `{λ, λ̄}`; each pair is one similarity class of right
//! eigenvalues `{q λ q⁻¹}`, and all members share the modulus `|λ|`. The
//! class is reported by its representative with nonnegative imaginary part.
//!
//! Left eigenvalues (`Ax = μx`) and the left spectral radius `ρ_l` are not
//! computed here; none of the bounds in this crate depend on them.

use std::cmp::Ordering;

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{c_eigenvalues, c_spectral_norm};
use crate::qmat::QMatrix;
use crate::scalar::Real;

const PAIRING_TOL: f64 = 1e-8;

/// The right spectrum of an `n × n` quaternion matrix, one complex
/// representative (`Im ≥ 0`) per similarity class, with multiplicity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RightSpectrum<T> {
    /// Sorted by decreasing modulus, then decreasing real part.
    pub representatives: Vec<Complex<T>>,
    pub radius: T,
    pub adjoint_dimension: usize,
}

impl<T: Real> RightSpectrum<T> {
    /// Builds the spectrum from the `2n` eigenvalues of a complex adjoint by
    /// greedy conjugate pairing.
    pub fn from_adjoint_eigenvalues(eigs: Vec<Complex<T>>, tol: T) -> Result<Self> {
        if !eigs.len().is_multiple_of(2) {
            return Err(Error::NumericalConsistency(format!("odd number ({}) of adjoint eigenvalues", eigs.len())));
        }
        let adjoint_dimension = eigs.len();
        let mut remaining = eigs;
        remaining.sort_by(|a, b| {
            b.im.partial_cmp(&a.im)
                .unwrap_or(Ordering::Equal)
                .then_with(|| b.norm().partial_cmp(&a.norm()).unwrap_or(Ordering::Equal))
                .then_with(|| b.re.partial_cmp(&a.re).unwrap_or(Ordering::Equal))
        });

        let mut representatives = Vec::with_capacity(adjoint_dimension / 2);
        while !remaining.is_empty() {
            let lead = remaining.remove(0);
            let target = lead.conj();
            let (idx, dist) = remaining
                .iter()
                .enumerate()
                .map(|(i, z)| (i, (*z - target).norm()))
                .min_by(|(ia, da), (ib, db)| {
                    da.partial_cmp(db)
                        .unwrap_or(Ordering::Equal)
                        .then_with(|| {
                            let (za, zb) = (remaining[*ia], remaining[*ib]);
                            zb.norm().partial_cmp(&za.norm()).unwrap_or(Ordering::Equal)
                        })
                        .then_with(|| {
                            let (za, zb) = (remaining[*ia], remaining[*ib]);
                            zb.re.partial_cmp(&za.re).unwrap_or(Ordering::Equal)
                        })
                })
                .ok_or_else(|| Error::NumericalConsistency("unpaired adjoint eigenvalue".into()))?;
            if !(dist <= tol) {
                return Err(Error::NumericalConsistency(format!(
                    "adjoint eigenvalue {lead} has no conjugate partner within {tol:e} (closest {dist:e})"
                )));
            }
            let partner = remaining.remove(idx);
            let half = T::lit(0.5);
            let rep = (lead + partner.conj()) * half;
            representatives.push(Complex::new(rep.re, rep.im.abs()));
        }

        representatives.sort_by(|a, b| {
            b.norm()
                .partial_cmp(&a.norm())
                .unwrap_or(Ordering::Equal)
                .then_with(|| b.re.partial_cmp(&a.re).unwrap_or(Ordering::Equal))
                .then_with(|| b.im.partial_cmp(&a.im).unwrap_or(Ordering::Equal))
        });
        let radius = representatives.iter().map(|z| z.norm()).fold(T::zero(), T::max);
        Ok(Self { representatives, radius, adjoint_dimension })
    }

    pub fn moduli(&self) -> Vec<T> {
        self.representatives.iter().map(|z| z.norm()).collect()
    }
}

/// Right spectrum of a square quaternion matrix.
pub fn right_spectrum<T: Real>(a: &QMatrix<T>) -> Result<RightSpectrum<T>> {
    if !a.is_square() {
        return Err(Error::shape(format!("right spectrum of a non-square {}x{} matrix", a.rows(), a.cols())));
    }
    let chi = a.complex_adjoint();
    let tol = T::lit(PAIRING_TOL) * chi.norm_frobenius().max(T::one());
    RightSpectrum::from_adjoint_eigenvalues(c_eigenvalues(&chi)?, tol)
}

/// `ρ_r(A)`: largest modulus over the right spectrum.
pub fn right_spectral_radius<T: Real>(a: &QMatrix<T>) -> Result<T> {
    Ok(right_spectrum(a)?.radius)
}

/// Operator 2-norm `‖A‖₂`, equal to the largest singular value of `χ(A)`.
pub fn q_spectral_norm<T: Real>(a: &QMatrix<T>) -> Result<T> {
    c_spectral_norm(&a.complex_adjoint())
}

/// The 2×2 real matrix of block 2-norms for the partition of `A` at
/// (`split_row`, `split_col`): `[[‖A₁₁‖₂, ‖A₁₂‖₂], [‖A₂₁‖₂, ‖A₂₂‖₂]]`.
pub fn partition_majorant<T: Real>(a: &QMatrix<T>, split_row: usize, split_col: usize) -> Result<[[T; 2]; 2]> {
    if !a.is_square() {
        return Err(Error::shape("partition majorant of a non-square matrix"));
    }
    let [a11, a12, a21, a22] = split_blocks(a, split_row, split_col)?;
    Ok([
        [q_spectral_norm(&a11)?, q_spectral_norm(&a12)?],
        [q_spectral_norm(&a21)?, q_spectral_norm(&a22)?],
    ])
}

pub(crate) fn split_blocks<T: Real>(m: &QMatrix<T>, split_row: usize, split_col: usize) -> Result<[QMatrix<T>; 4]> {
    let (r, c) = m.shape();
    if split_row == 0 || split_row >= r || split_col == 0 || split_col >= c {
        return Err(Error::shape(format!("split ({split_row}, {split_col}) is not interior to a {r}x{c} matrix")));
    }
    Ok([
        m.submatrix(0, 0, split_row, split_col)?,
        m.submatrix(0, split_col, split_row, c - split_col)?,
        m.submatrix(split_row, 0, r - split_row, split_col)?,
        m.submatrix(split_row, split_col, r - split_row, c - split_col)?,
    ])
}

/// Spectral radius of a real 2×2 matrix in closed form.
pub fn majorant_spectral_radius<T: Real>(m: &[[T; 2]; 2]) -> T {
    let [[a, b], [c, d]] = *m;
    let half = T::lit(0.5);
    let disc = (a - d) * (a - d) + T::lit(4.0) * b * c;
    if disc >= T::zero() {
        let s = disc.sqrt();
        ((a + d + s) * half).abs().max(((a + d - s) * half).abs())
    } else {
        // complex pair with modulus √det
        (a * d - b * c).abs().sqrt()
    }
}

/// Largest singular value of a real 2×2 matrix in closed form.
pub fn majorant_norm<T: Real>(m: &[[T; 2]; 2]) -> T {
    let [[a, b], [c, d]] = *m;
    let half = T::lit(0.5);
    ((a + d).hypot(b - c) + (a - d).hypot(b + c)) * half
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::tests::arb_qmatrix;
    use crate::quat::Quaternion;
    use crate::rng::SplitMix64;
    use proptest::prelude::*;

    type Q = Quaternion<f64>;
    type M = QMatrix<f64>;

    fn random_q(n: usize, seed: u64) -> M {
        let mut r = SplitMix64::new(seed);
        M::from_fn(n, n, |_, _| Q::new(r.symmetric(1.0), r.symmetric(1.0), r.symmetric(1.0), r.symmetric(1.0)))
    }

    #[test]
    fn unit_j() {
        let s = right_spectrum(&M::scalar(Q::j())).unwrap();
        assert_eq!(s.representatives.len(), 1);
        assert!((s.representatives[0] - Complex::new(0.0, 1.0)).norm() < 1e-14);
        assert!((s.radius - 1.0).abs() < 1e-14);
        assert_eq!(s.adjoint_dimension, 2);
    }

    #[test]
    fn real_diagonal() {
        let s = right_spectrum(&M::diag(&[Q::real(2.0), Q::real(3.0)])).unwrap();
        assert!((s.representatives[0] - Complex::new(3.0, 0.0)).norm() < 1e-14);
        assert!((s.representatives[1] - Complex::new(2.0, 0.0)).norm() < 1e-14);
        assert!((s.radius - 3.0).abs() < 1e-14);
    }

    #[test]
    fn radius_examples() {
        assert_eq!(right_spectral_radius(&M::zeros(3, 3)).unwrap(), 0.0);
        let r = right_spectral_radius(&M::scalar(Q::new(1.0, 1.0, 0.0, 0.0))).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
        assert!(matches!(right_spectrum(&M::zeros(2, 3)), Err(Error::Shape(_))));
    }

    #[test]
    fn spectral_norm_examples() {
        let q = M::scalar(Q::new(1.0, 2.0, 0.0, 2.0));
        assert!((q_spectral_norm(&q).unwrap() - 3.0).abs() < 1e-14);
        assert!((q_spectral_norm(&M::identity(4)).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn radius_of_square_is_square_of_radius() {
        for seed in 0..10 {
            let a = random_q(3, seed);
            let r = right_spectral_radius(&a).unwrap();
            let r2 = right_spectral_radius(&(&a * &a)).unwrap();
            assert!((r2 - r * r).abs() <= 1e-9 * r * r, "seed {seed}");
        }
    }

    #[test]
    fn unpaired_eigenvalues_are_rejected() {
        let eigs = vec![Complex::new(0.0, 1.0), Complex::new(0.0, 2.0)];
        assert!(matches!(
            RightSpectrum::from_adjoint_eigenvalues(eigs, 1e-8),
            Err(Error::NumericalConsistency(_))
        ));
    }

    #[test]
    fn right_eigenvectors_exist_for_representatives() {
        // χ eigenvector (u; w) gives the quaternion vector x = u − conj(w)·j with Ax = xλ
        let a = random_q(3, 4);
        let chi = a.complex_adjoint();
        let spec = right_spectrum(&a).unwrap();
        for lam in &spec.representatives {
            let v = crate::kernel::c_eigenpair(&chi, *lam).unwrap();
            let x: Vec<Q> = (0..3).map(|i| Q::new(v[i].re, v[i].im, -v[i + 3].re, v[i + 3].im)).collect();
            let l = Q::from_complex(*lam);
            for i in 0..3 {
                let ax: Q = (0..3).map(|j| a[(i, j)] * x[j]).sum();
                assert!((ax - x[i] * l).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn complex_matrices_keep_their_eigenvalues() {
        let mut r = SplitMix64::new(11);
        for _ in 0..5 {
            let a = M::from_fn(4, 4, |_, _| Q::new(r.symmetric(1.0), r.symmetric(1.0), 0.0, 0.0));
            let spec = right_spectrum(&a).unwrap();
            let plain = crate::qmat::CMatrix::from_fn(4, 4, |i, j| Complex::new(a[(i, j)].w, a[(i, j)].x));
            let classical = c_eigenvalues(&plain).unwrap();
            for rep in &spec.representatives {
                let hit = classical.iter().any(|z| (z - rep).norm() < 1e-9 || (z.conj() - rep).norm() < 1e-9);
                assert!(hit, "{rep} not among {classical:?}");
            }
        }
    }

    #[test]
    fn majorant_of_block_diagonal() {
        let a = M::diag(&[Q::new(0.0, 3.0, 0.0, 4.0), Q::real(-2.0)]);
        let m = partition_majorant(&a, 1, 1).unwrap();
        assert!((m[0][0] - 5.0).abs() < 1e-14 && (m[1][1] - 2.0).abs() < 1e-14);
        assert_eq!(m[0][1], 0.0);
        assert_eq!(m[1][0], 0.0);
        assert_eq!(partition_majorant(&M::zeros(4, 4), 2, 2).unwrap(), [[0.0; 2]; 2]);
        assert!(matches!(partition_majorant(&a, 0, 1), Err(Error::Shape(_))));
        assert!(matches!(partition_majorant(&a, 1, 2), Err(Error::Shape(_))));
    }

    #[test]
    fn closed_forms_for_two_by_two() {
        let m = [[1.0, 2.0], [3.0, 4.0]];
        // eigenvalues (5 ± √33)/2
        assert!((majorant_spectral_radius(&m) - (5.0 + 33f64.sqrt()) / 2.0).abs() < 1e-14);
        // σ_max² = (30 + √884)/2
        assert!((majorant_norm(&m) - ((30.0 + 884f64.sqrt()) / 2.0).sqrt()).abs() < 1e-13);
        assert!((majorant_spectral_radius(&[[0.0f64, -1.0], [1.0, 0.0]]) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lemma_partition_inequalities() {
        for seed in 0..5 {
            let a = random_q(4, 100 + seed);
            let m = partition_majorant(&a, 2, 2).unwrap();
            assert!(right_spectral_radius(&a).unwrap() <= majorant_spectral_radius(&m) + 1e-9);
            assert!(q_spectral_norm(&a).unwrap() <= majorant_norm(&m) + 1e-9);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn norm_identities(a in arb_qmatrix(3, 3)) {
            let n = q_spectral_norm(&a).unwrap();
            let nh = q_spectral_norm(&a.conj_transpose()).unwrap();
            let nhn = q_spectral_norm(&(&a.conj_transpose() * &a)).unwrap();
            let nnh = q_spectral_norm(&(&a * &a.conj_transpose())).unwrap();
            let n2 = n * n;
            for other in [nh * nh, nhn, nnh] {
                prop_assert!((n2 - other).abs() <= 1e-10 * n2.max(1e-300));
            }
        }

        #[test]
        fn radius_below_norm(a in arb_qmatrix(4, 4)) {
            prop_assert!(right_spectral_radius(&a).unwrap() <= q_spectral_norm(&a).unwrap() * (1.0 + 1e-12));
        }
    }
}
