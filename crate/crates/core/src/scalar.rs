use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps, ToPrimitive};
use std::fmt::{Debug, Display};
use std::iter::{Product, Sum};

/// Real scalar the toolkit is generic over; implemented by `f32` and `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssignOps
    + Sum
    + Product
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossless for every count that fits the mantissa; counts here are
    /// bounded by the dimension cap, far below that.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar")
    }

    /// Constants given as `f64` literals (tolerances, cutoffs).
    fn from_config(x: f64) -> Self {
        Self::from_f64(x).expect("constant representable in scalar")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("scalar convertible to f64")
    }
}

impl<T> Scalar for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + NumAssignOps
        + Sum
        + Product
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}
