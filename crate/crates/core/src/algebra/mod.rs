//! Exact arithmetic foundation: rationals, sparse multivariate polynomials,
//! truncated series with graded composition, symmetric tensors and exact
//! linear algebra over ℚ.

mod matrix;
mod monomial;
mod polynomial;
mod series;
mod tensor;
pub mod text;

pub use matrix::{Matrix, PolyMatrix};
pub use monomial::Monomial;
pub use polynomial::{poly_arith, ArithOp, Polynomial};
pub use series::{identity_args, substitute, truncate, TruncatedSeries};
pub use tensor::SymmetricTensor;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

/// `(2k-1)!!`, with `(-1)!! = 1`.
pub fn double_factorial_odd(k: u64) -> BigInt {
    (1..=k).fold(BigInt::from(1), |acc, i| acc * (2 * i - 1))
}
