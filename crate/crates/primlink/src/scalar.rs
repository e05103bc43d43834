use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::Float;

/// Scalar type for coordinates and edge weights: `f32` or `f64`.
///
/// Weight comparisons throughout the crate are exact floating-point
/// comparisons; two weights are tied only when they compare equal.
pub trait Scalar: Float + Sum + Debug + Display + Send + Sync + 'static {}

impl<T> Scalar for T where T: Float + Sum + Debug + Display + Send + Sync + 'static {}
