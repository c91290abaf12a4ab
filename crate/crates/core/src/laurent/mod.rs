//! Exact Laurent polynomials in `a` and `q` with half-integer exponents,
//! plus the rational-function and radical layers built on top of them.

mod expr;
mod factor;
mod monomial;
mod poly;
mod scalar;
mod surd;

pub use expr::{parse_poly, parse_scalar, parse_surd};
pub use factor::{cyclotomic, factor_poly, Factor, Factored};
pub use monomial::Monomial;
pub use poly::LaurentPoly;
pub use scalar::Scalar;
pub use surd::{Radicand, Surd};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("value still carries irrational factors and cannot be lowered")]
    NotLowerable,
    #[error("unsupported radical: {0}")]
    UnsupportedRadical(String),
    #[error("evaluation of a half-integer exponent at a rational point")]
    HalfIntegerEvaluation,
}

pub type Result<T> = std::result::Result<T, LaurentError>;

#[cfg(test)]
pub(crate) fn poly_strategy() -> impl proptest::strategy::Strategy<Value = LaurentPoly> {
    use proptest::prelude::*;
    prop::collection::vec((-6i32..6, -10i32..10, -5i64..6, 1i64..4), 0..7).prop_map(|v| {
        LaurentPoly::from_terms(v.into_iter().map(|(a, q, n, d)| (Monomial::doubled(a, q), BigRational::new(n.into(), d.into()))))
    })
}
