//! Exact rational helpers on top of [`num_rational::BigRational`].
//!
//! Values are always kept in lowest terms with a positive denominator; the
//! textual form used everywhere in this workspace is `p/q`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `p/q` as an exact rational. Panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational")]
    Empty,
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("malformed rational `{0}`")]
    Malformed(String),
}

/// Parses `p/q` or a bare integer `p`. Whitespace around the parts is not allowed.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let parse_int = |t: &str| {
        if t.is_empty() || t.starts_with('+') && t.len() == 1 {
            return Err(ParseRationalError::Malformed(s.to_string()));
        }
        BigInt::from_str(t).map_err(|_| ParseRationalError::Malformed(s.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Display adapter that always prints `p/q`, including `q = 1`.
pub struct Fraction<'a>(pub &'a Rational);

impl fmt::Display for Fraction<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

pub fn format_rational(r: &Rational) -> String {
    Fraction(r).to_string()
}

/// Least common multiple of the denominators; `1` for an empty input.
pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn floor_half(v: i64) -> i64 {
    v.div_euclid(2)
}

pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}
