use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Real scalar type the numerical kernels are generic over.
///
/// Blanket-implemented for everything with the right bounds; in practice
/// `f32` and `f64`. `FromPrimitive` is required to inject physical constants
/// and literal coefficients.
pub trait Real: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {
    /// Shorthand for `from_f64(x).unwrap()`; panics only if the literal is
    /// not representable (e.g. absurd exponents), which is a programming
    /// error, not an input error.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal not representable in this scalar type")
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half() -> Self {
        Self::one() / Self::two()
    }

    fn pi() -> Self {
        Self::lit(std::f64::consts::PI)
    }
}

impl<T: Float + FromPrimitive + Debug + Display + Send + Sync + 'static> Real for T {}
