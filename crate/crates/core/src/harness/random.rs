use crate::companion::MatrixPolynomial;
use crate::error::{Error, Result};
use crate::qmat::QMatrix;
use crate::quat::Quaternion;
use crate::rng::SplitMix64;

/// Random monic polynomial with every quaternion component uniform on
/// `[−scale, scale]`.
///
/// Draws come from one [`SplitMix64`] stream seeded with `seed`, consumed
/// coefficient by coefficient (`A₀` first), row-major within a coefficient,
/// and in the order `w, x, y, z` within an entry.
pub fn random_polynomial(k: usize, n: usize, seed: u64, scale: f64) -> Result<MatrixPolynomial<f64>> {
    if k == 0 || n == 0 {
        return Err(Error::Parameter(format!("random polynomial needs k >= 1 and n >= 1 (got k = {k}, n = {n})")));
    }
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::Parameter(format!("scale must be positive and finite (got {scale})")));
    }
    let mut rng = SplitMix64::new(seed);
    let coeffs = (0..k)
        .map(|_| {
            QMatrix::from_fn(n, n, |_, _| {
                let w = rng.symmetric(scale);
                let x = rng.symmetric(scale);
                let y = rng.symmetric(scale);
                let z = rng.symmetric(scale);
                Quaternion::new(w, x, y, z)
            })
        })
        .collect();
    MatrixPolynomial::new(coeffs)
}
