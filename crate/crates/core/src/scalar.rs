//! Scalar abstraction for the representation layer.

use std::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive, Signed};

/// Real scalar the spectral and transform code is generic over.
///
/// Implemented for `f32`, `f64`, and any other type providing the listed
/// `num-traits` surface (double-double types, for instance, which the test
/// suite uses as an extended-precision reference).
pub trait Real:
    Float + FloatConst + FromPrimitive + Signed + Debug + Send + Sync + 'static
{
    /// Converts an `f64` literal into the scalar type.
    ///
    /// Goes through `NumCast` rather than `FromPrimitive::from_f64`, which some
    /// extended types implement by truncating to an integer.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("f64 literal must be representable")
    }

    /// Converts an index or count.
    #[inline]
    fn from_index(n: usize) -> Self {
        Self::from_usize(n).expect("index must be representable")
    }

    /// A power of two whose fourth power is still finite, used as a
    /// rescaling threshold.
    ///
    /// Built by repeated squaring since some extended types cannot convert
    /// large `f64` values or take roots of their own maximum.
    fn rescale_threshold() -> Self {
        let mut t = Self::lit(65536.0);
        loop {
            let t2 = t * t;
            let t8 = t2 * t2 * t2 * t2;
            if !t8.is_finite() || t8 >= Self::max_value() {
                return t;
            }
            t = t2;
        }
    }
}

impl<T> Real for T where T: Float + FloatConst + FromPrimitive + Signed + Debug + Send + Sync + 'static {}
