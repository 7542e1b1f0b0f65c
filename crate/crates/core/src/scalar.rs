//! Exact rational scalars.
//!
//! Every weight, gate parameter and phase exponent in this crate is an
//! arbitrary-precision rational. `BigRational` keeps values reduced with a
//! positive denominator, which is what the textual formats rely on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use num_rational::BigRational as Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}` in rational literal")]
    BadInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("denominator must be a positive integer without sign in `{0}`")]
    SignedDenominator(String),
    #[error("rational `{0}` is not in lowest terms")]
    NotReduced(String),
}

/// Parses an optionally signed integer or a reduced `p/q` literal.
pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ScalarParseError::Empty);
    }
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let numer: BigInt = num_text
        .parse()
        .map_err(|_| ScalarParseError::BadInteger(num_text.to_string()))?;
    let Some(den_text) = den_text else {
        return Ok(Scalar::from_integer(numer));
    };
    if den_text.starts_with(['+', '-']) {
        return Err(ScalarParseError::SignedDenominator(text.to_string()));
    }
    let denom: BigInt = den_text
        .parse()
        .map_err(|_| ScalarParseError::BadInteger(den_text.to_string()))?;
    if denom.is_zero() {
        return Err(ScalarParseError::ZeroDenominator(text.to_string()));
    }
    if !numer.gcd(&denom).is_one() {
        return Err(ScalarParseError::NotReduced(text.to_string()));
    }
    Ok(Scalar::new_raw(numer, denom))
}

/// Parses a comma separated list such as `1,-1,1/2`.
pub fn parse_scalar_list(text: &str) -> Result<Vec<Scalar>, ScalarParseError> {
    text.split(',').map(parse_scalar).collect()
}

pub fn int(value: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Scalar {
    Scalar::new(BigInt::from(numer), BigInt::from(denom))
}

pub(crate) fn is_positive(value: &Scalar) -> bool {
    value.is_positive()
}
