use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Real scalar the whole crate is generic over: `f32` or `f64`.
pub trait Real:
    Float + FromPrimitive + NumAssign + Sum + Debug + Display + std::fmt::LowerExp + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }

    /// A relative tolerance that is `v` in `f64` but never drops below a few
    /// ulps of the scalar type.
    #[inline]
    fn tol(v: f64) -> Self {
        Self::lit(v).max(Self::epsilon() * Self::lit(4.0))
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
