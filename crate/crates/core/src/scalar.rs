//! Floating-point scalar abstraction for amplitude arithmetic.

use std::fmt;
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Scalar type backing probability amplitudes: `f32` or `f64`.
///
/// The protocol layers use the `f64` aliases exported at the crate root;
/// the generic engine exists so shallow circuits can run in single
/// precision when memory matters.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + fmt::Debug
    + fmt::Display
    + fmt::LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Lossless (for f64) or best-effort conversion from an `f64` constant.
    fn from_f64_const(v: f64) -> Self {
        Self::from_f64(v).expect("constant representable in scalar type")
    }

    /// Conversion to `f64` for reporting and sampling comparisons.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("scalar convertible to f64")
    }

    /// Norm drift tolerated when constructing a state from raw amplitudes.
    fn construction_norm_tolerance() -> f64 {
        1e-9
    }

    /// Norm drift beyond which a state refuses to be measured.
    fn measurement_norm_tolerance() -> f64 {
        1e-6
    }
}

impl Scalar for f32 {
    // Single precision drifts by ~ε·√dim on ordinary registers; scale the
    // gates accordingly.
    fn construction_norm_tolerance() -> f64 {
        1e-5
    }

    fn measurement_norm_tolerance() -> f64 {
        1e-4
    }
}

impl Scalar for f64 {}
