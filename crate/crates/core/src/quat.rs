//! Quaternion scalars `w + x·i + y·j + z·k`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A quaternion stored in the fixed component order `(w, x, y, z)`.
///
/// Serializes as the 4-element array `[w, x, y, z]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[T; 4]", into = "[T; 4]")]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct Quaternion<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Quaternion<T> {
    #[inline]
    pub const fn new(w: T, x: T, y: T, z: T) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub fn real(w: T) -> Self {
        Self::new(w, T::zero(), T::zero(), T::zero())
    }

    #[inline]
    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    #[inline]
    pub fn j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    #[inline]
    pub fn k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    /// Embeds a complex number `a + b·i` as `a + b·i + 0·j + 0·k`.
    #[inline]
    pub fn from_complex(c: Complex<T>) -> Self {
        Self::new(c.re, c.im, T::zero(), T::zero())
    }

    /// Splits `q = c1 + c2·j` into its two complex parts `(c1, c2)`, where
    /// `c1 = w + x·i` and `c2 = y + z·i`.
    #[inline]
    pub fn split(self) -> (Complex<T>, Complex<T>) {
        (Complex::new(self.w, self.x), Complex::new(self.y, self.z))
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Squared modulus `w² + x² + y² + z²`.
    #[inline]
    pub fn norm_sqr(self) -> T {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Modulus `|q|`, evaluated with scaling so that large components do not
    /// overflow the intermediate sum of squares.
    pub fn abs(self) -> T {
        let m = self.w.abs().max(self.x.abs()).max(self.y.abs()).max(self.z.abs());
        if m == T::zero() || !m.is_finite() {
            return m;
        }
        let (w, x, y, z) = (self.w / m, self.x / m, self.y / m, self.z / m);
        m * (w * w + x * x + y * y + z * z).sqrt()
    }

    /// Multiplicative inverse `conj(q) / |q|²`.
    pub fn inv(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == T::zero() {
            return Err(Error::Domain("inverse of the zero quaternion".into()));
        }
        Ok(self.conj() / n2)
    }

    #[inline]
    pub fn scale(self, s: T) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Converts between scalar types.
    pub fn cast<U: Real>(self) -> Quaternion<U> {
        Quaternion::new(
            U::lit(self.w.as_f64()),
            U::lit(self.x.as_f64()),
            U::lit(self.y.as_f64()),
            U::lit(self.z.as_f64()),
        )
    }
}

impl<T: Real> From<[T; 4]> for Quaternion<T> {
    fn from(a: [T; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }
}

impl<T: Real> From<Quaternion<T>> for [T; 4] {
    fn from(q: Quaternion<T>) -> Self {
        [q.w, q.x, q.y, q.z]
    }
}

impl<T: Real> Zero for Quaternion<T> {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

impl<T: Real> One for Quaternion<T> {
    fn one() -> Self {
        Self::real(T::one())
    }
}

impl<T: Real> Add for Quaternion<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Real> AddAssign for Quaternion<T> {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Real> Sub for Quaternion<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Real> SubAssign for Quaternion<T> {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<T: Real> Neg for Quaternion<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl<T: Real> Mul for Quaternion<T> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl<T: Real> Mul<T> for Quaternion<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        self.scale(s)
    }
}

impl<T: Real> Div<T> for Quaternion<T> {
    type Output = Self;
    #[inline]
    fn div(self, s: T) -> Self {
        Self::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl<T: Real> std::iter::Sum for Quaternion<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl<T: Real> fmt::Display for Quaternion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i{:+}j{:+}k", self.w, self.x, self.y, self.z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type Q = Quaternion<f64>;

    fn q(w: f64, x: f64, y: f64, z: f64) -> Q {
        Q::new(w, x, y, z)
    }

    #[test]
    fn defining_relations() {
        assert_eq!(Q::i() * Q::j(), Q::k());
        assert_eq!(Q::j() * Q::i(), -Q::k());
        assert_eq!(Q::j() * Q::k(), Q::i());
        assert_eq!(Q::k() * Q::i(), Q::j());
        let m1 = Q::real(-1.0);
        assert_eq!(Q::i() * Q::i(), m1);
        assert_eq!(Q::j() * Q::j(), m1);
        assert_eq!(Q::k() * Q::k(), m1);
        assert_eq!(Q::i() * Q::j() * Q::k(), m1);
        assert_eq!(q(1.0, 1.0, 0.0, 0.0) * q(1.0, -1.0, 0.0, 0.0), Q::real(2.0));
    }

    #[test]
    fn conjugation() {
        assert_eq!(q(1.0, 2.0, 3.0, 4.0).conj(), q(1.0, -2.0, -3.0, -4.0));
        assert_eq!(Q::real(5.0).conj(), Q::real(5.0));
        let (p, r) = (Q::i(), Q::j());
        assert_eq!((p * r).conj(), -Q::k());
        assert_eq!((p * r).conj(), r.conj() * p.conj());
    }

    #[test]
    fn modulus() {
        assert_eq!(q(1.0, 1.0, 1.0, 1.0).abs(), 2.0);
        assert_eq!(Q::zero().abs(), 0.0);
        let pq = q(1.0, 1.0, 0.0, 0.0) * q(1.0, 0.0, 1.0, 0.0);
        assert!((pq.abs() - 2.0).abs() < 1e-15);
        // no overflow in the intermediate sum of squares
        let big = q(1e200, 1e200, 0.0, 0.0);
        assert!((big.abs() / (2f64.sqrt() * 1e200) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inverse() {
        assert_eq!(Q::i().inv().unwrap(), -Q::i());
        assert_eq!(Q::real(2.0).inv().unwrap(), Q::real(0.5));
        assert_eq!(q(1.0, 1.0, 1.0, 1.0).inv().unwrap(), q(0.25, -0.25, -0.25, -0.25));
        assert!(matches!(Q::zero().inv(), Err(Error::Domain(_))));
    }

    #[test]
    fn single_precision() {
        let p = Quaternion::<f32>::new(1.0, 2.0, 3.0, 4.0);
        let one = p * p.inv().unwrap();
        assert!((one - Quaternion::one()).abs() < 4.0 * f32::EPSILON);
    }

    #[test]
    fn serializes_as_wxyz_array() {
        let s = serde_json::to_string(&q(1.0, 2.0, 3.0, 4.0)).unwrap();
        assert_eq!(s, "[1.0,2.0,3.0,4.0]");
        let back: Q = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q(1.0, 2.0, 3.0, 4.0));
    }

    fn arb_q(r: f64) -> impl Strategy<Value = Q> {
        (-r..r, -r..r, -r..r, -r..r).prop_map(|(w, x, y, z)| q(w, x, y, z))
    }

    fn rel_close(a: Q, b: Q, scale: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * scale.max(f64::MIN_POSITIVE)
    }

    proptest! {
        #[test]
        fn modulus_is_multiplicative(p in arb_q(10.0), r in arb_q(10.0)) {
            let lhs = (p * r).abs();
            let rhs = p.abs() * r.abs();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
        }

        #[test]
        fn conj_reverses_products(p in arb_q(10.0), r in arb_q(10.0)) {
            let lhs = (p * r).conj();
            let rhs = r.conj() * p.conj();
            prop_assert!(rel_close(lhs, rhs, 1.0 + p.abs() * r.abs(), 1e-14));
        }

        #[test]
        fn times_conj_is_norm_squared(p in arb_q(10.0)) {
            let m = p * p.conj();
            let n2 = p.norm_sqr();
            prop_assert!((m.w - n2).abs() <= 1e-12 * n2.max(1e-300));
            prop_assert!(m.x.abs() + m.y.abs() + m.z.abs() <= 1e-12 * n2.max(1e-300));
        }

        #[test]
        fn associative(p in arb_q(10.0), r in arb_q(10.0), s in arb_q(10.0)) {
            let lhs = (p * r) * s;
            let rhs = p * (r * s);
            prop_assert!(rel_close(lhs, rhs, p.abs() * r.abs() * s.abs(), 1e-12));
        }

        #[test]
        fn conj_is_involutive(p in arb_q(1e6)) {
            prop_assert_eq!(p.conj().conj(), p);
        }

        #[test]
        fn inverse_is_two_sided(p in arb_q(10.0)) {
            prop_assume!(p.abs() > 1e-6);
            let inv = p.inv().unwrap();
            prop_assert!((p * inv - Q::one()).abs() <= 4.0 * f64::EPSILON);
            prop_assert!((inv * p - Q::one()).abs() <= 4.0 * f64::EPSILON);
        }
    }
}
