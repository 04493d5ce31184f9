//! Upper bounds on the right eigenvalues of monic quaternionic matrix
//! polynomials, together with the machinery needed to check them: dense
//! quaternion matrices, the complex adjoint representation, a small dense
//! complex eigensolver, and block companion linearizations.
//!
//! All numerical types are generic over a [`Real`] scalar (`f32` or `f64`).
//! The `*64` / `*32` aliases below fix the scalar for everyday use; the
//! [`harness`] module and the CLI work in `f64`.

pub mod bounds;
pub mod companion;
pub mod error;
pub mod harness;
pub mod kernel;
pub mod qmat;
pub mod quat;
pub mod rng;
pub mod scalar;
pub mod spectrum;

pub use bounds::{
    all_bounds, b1_baseline, lemma33_value, lemma34_value, scalar_bound, selected_bounds, thm35_bound, thm36_bound,
    thm37_bound, BoundEntry, BoundName, BoundReport, BoundSet, Corollary,
};
pub use companion::{
    block_partition, build_companion, companion_power, derived_coefficients,
    polynomial_eigenpairs, polynomial_right_spectrum, proof_matrix_n, proof_matrix_s,
    CompanionMatrix, DerivedCoefficients, MatrixPolynomial, PolynomialEigenpair,
};
pub use error::{Error, Result};
pub use kernel::{c_eigenpair, c_eigenvalues, c_spectral_norm};
pub use qmat::{CMatrix, QMatrix};
pub use quat::Quaternion;
pub use scalar::Real;
pub use spectrum::{
    majorant_norm, majorant_spectral_radius, partition_majorant, q_spectral_norm, right_spectral_radius,
    right_spectrum, RightSpectrum,
};

pub use num_complex::Complex;

pub type Quaternion64 = Quaternion<f64>;
pub type Quaternion32 = Quaternion<f32>;
pub type QMatrix64 = QMatrix<f64>;
pub type QMatrix32 = QMatrix<f32>;
pub type CMatrix64 = CMatrix<f64>;
pub type CMatrix32 = CMatrix<f32>;
pub type MatrixPolynomial64 = MatrixPolynomial<f64>;
pub type MatrixPolynomial32 = MatrixPolynomial<f32>;
pub type RightSpectrum64 = RightSpectrum<f64>;
pub type BoundReport64 = BoundReport<f64>;
