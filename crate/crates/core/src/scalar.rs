//! Floating-point abstraction shared by the property and metric code.
//!
//! Graph structure is integral; only the derived statistics need a real type.
//! Everything numeric is written against [`Scalar`] so the same code serves
//! `f64` (the default everywhere) and `f32` (half the memory for large
//! per-node vectors).

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    fn from_count(x: usize) -> Self {
        Self::from_usize(x).expect("count representable in scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
}

/// `numerator / denominator` for exact integer counts.
pub(crate) fn ratio<F: Scalar>(numerator: u128, denominator: u128) -> F {
    // Go through f64 division so the f64 instantiation is correctly rounded.
    F::lit(numerator as f64 / denominator as f64)
}
