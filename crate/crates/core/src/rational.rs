//! Exact rational scalars.
//!
//! Every classical probability and payoff in this crate is a [`Rational`]:
//! an arbitrary-precision fraction kept in lowest terms with a positive
//! denominator after every operation.

use num_bigint::BigInt;
use std::str::FromStr;
use thiserror::Error;

/// The exact scalar type used throughout the classical-game modules.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n/d` as a [`Rational`].
///
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}`")]
    BadInteger(String),
    #[error("denominator must be a positive integer, got `{0}`")]
    BadDenominator(String),
}

/// Parses `p/q` or `p` with arbitrary-precision integers.
///
/// The denominator, when present, must be a positive integer literal; the
/// sign belongs to the numerator.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s).map_err(|_| ParseRationalError::BadInteger(s.into()))?;
            Ok(Rational::from_integer(n))
        }
        Some((num, den)) => {
            let n = BigInt::from_str(num.trim())
                .map_err(|_| ParseRationalError::BadInteger(num.trim().into()))?;
            let d = BigInt::from_str(den.trim())
                .map_err(|_| ParseRationalError::BadDenominator(den.trim().into()))?;
            if d <= BigInt::from(0) {
                return Err(ParseRationalError::BadDenominator(den.trim().into()));
            }
            Ok(Rational::new(n, d))
        }
    }
}
