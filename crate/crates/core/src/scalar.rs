//! Scalar abstractions.
//!
//! Symbolic coefficients are generic over an exact (or approximate) weight
//! type implementing [`Scalar`]; numeric evaluation and dense linear algebra
//! are generic over a floating point type implementing [`Real`].

use std::fmt::{Debug, Display};

use nalgebra::RealField;
use num_traits::{Float, FromPrimitive, Num, Signed, ToPrimitive};

/// Weight type of a [`Polynomial`](crate::Polynomial).
///
/// Implemented for `Ratio<i64>` (the default, exact) as well as `f32`/`f64`.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Num
    + Signed
    + ToPrimitive
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    /// `num / den` in this scalar type.
    fn ratio(num: i64, den: i64) -> Self {
        let n = Self::from_i64(num).expect("numerator representable");
        let d = Self::from_i64(den).expect("denominator representable");
        n / d
    }

    fn from_count(count: u64) -> Self {
        Self::from_u64(count).expect("count representable")
    }

    /// Numerator/denominator pair, when the scalar is an exact rational.
    fn as_fraction(&self) -> Option<(i64, i64)> {
        None
    }
}

impl Scalar for f64 {}
impl Scalar for f32 {}

impl Scalar for num_rational::Ratio<i64> {
    fn as_fraction(&self) -> Option<(i64, i64)> {
        Some((*self.numer(), *self.denom()))
    }
}

/// Floating point type used for numeric evaluation and dense matrices.
pub trait Real: Float + FromPrimitive + RealField + Copy + Send + Sync + 'static {}

impl<T> Real for T where T: Float + FromPrimitive + RealField + Copy + Send + Sync + 'static {}

/// Lossy conversion of a scalar weight into a floating point value.
pub fn to_real<Q: Scalar, F: Real>(q: &Q) -> F {
    <F as FromPrimitive>::from_f64(q.to_f64().expect("finite weight")).expect("representable")
}
