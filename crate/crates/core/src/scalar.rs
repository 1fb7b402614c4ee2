//! Scalar abstractions shared by the numeric modules.
//!
//! Radial maps and point coordinates are generic over [`Real`] (`f32`, `f64`).
//! The flow engine is generic over [`FlowScalar`], which additionally admits
//! exact rationals such as [`num_rational::BigRational`].

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, Num, ToPrimitive};

/// Floating point type usable for densities and radial maps: f32 or f64.
pub trait Real: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {
    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Field-like scalar the flow engine accumulates in.
pub trait FlowScalar: Clone + Debug + PartialOrd + Num + FromPrimitive + ToPrimitive + Send + Sync {
    /// `|self - other|`, spelled without requiring `Signed`.
    fn abs_diff(&self, other: &Self) -> Self {
        if self > other {
            self.clone() - other.clone()
        } else {
            other.clone() - self.clone()
        }
    }

    /// `1/k` for a redistribution split count.
    fn reciprocal(k: u16) -> Self {
        Self::one() / Self::from_u16(k).expect("small integer representable")
    }
}

impl<T> FlowScalar for T where T: Clone + Debug + PartialOrd + Num + FromPrimitive + ToPrimitive + Send + Sync {}
