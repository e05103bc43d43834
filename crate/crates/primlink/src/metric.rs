use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::scalar::Scalar;

/// Pointwise dissimilarity between coordinate rows.
///
/// `SquaredEuclidean` is monotone in `Euclidean`, so the two produce the
/// same tree topology with heights related by squaring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    Euclidean,
    SquaredEuclidean,
    Manhattan,
    Chebyshev,
}

impl Metric {
    /// Evaluate on two rows of equal dimension.
    ///
    /// Evaluation is pure and symmetric: swapping `a` and `b` yields the
    /// bitwise-identical value, and repeated calls return identical values.
    pub fn eval<T: Scalar>(&self, a: &[T], b: &[T]) -> T {
        debug_assert_eq!(a.len(), b.len());
        match self {
            Metric::Euclidean => squared_euclidean(a, b).sqrt(),
            Metric::SquaredEuclidean => squared_euclidean(a, b),
            Metric::Manhattan => a
                .iter()
                .zip(b)
                .fold(T::zero(), |acc, (&x, &y)| acc + (x - y).abs()),
            Metric::Chebyshev => a
                .iter()
                .zip(b)
                .fold(T::zero(), |acc, (&x, &y)| acc.max((x - y).abs())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Metric::Euclidean => "euclidean",
            Metric::SquaredEuclidean => "squared-euclidean",
            Metric::Manhattan => "manhattan",
            Metric::Chebyshev => "chebyshev",
        }
    }
}

fn squared_euclidean<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| {
        let diff = x - y;
        acc + diff * diff
    })
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Metric, Error> {
        match s {
            "euclidean" => Ok(Metric::Euclidean),
            "squared-euclidean" | "sqeuclidean" => Ok(Metric::SquaredEuclidean),
            "manhattan" => Ok(Metric::Manhattan),
            "chebyshev" => Ok(Metric::Chebyshev),
            _ => Err(Error::UnknownMetric {
                name: s.to_string(),
            }),
        }
    }
}
