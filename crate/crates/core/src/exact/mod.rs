//! Exact rational arithmetic, multivariate polynomials and rank kernels.

pub mod bareiss;
pub mod matrix;
pub mod multi_index;
pub mod poly;
pub mod ratfunc;

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;

pub use matrix::{nullspace, rank_exact, MatrixQ};
pub use multi_index::{binomial, enumerate, Enumeration, MultiIndex};
pub use poly::Poly;
pub use ratfunc::RatFunc;

/// Rational from a machine integer.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Dot product of two equal-length rational vectors.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "dot product length mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
