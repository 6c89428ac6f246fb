//! Exact rationals. Arithmetic is `num_rational::BigRational`; this module
//! adds the `p/q` text form used by state files and reports.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

/// Always `p/q` in lowest terms, including integers (`0/1`, `1/1`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("malformed rational")]
    Malformed,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("negative denominator")]
    NegativeDenominator,
}

/// Parse `p/q` (sign allowed on `p` only) or a bare integer `p`.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p, q),
        None => (text, "1"),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let unsigned_p = p.strip_prefix(['-', '+']).unwrap_or(p);
    if !digits(unsigned_p) {
        return Err(RationalParseError::Malformed);
    }
    if let Some(rest) = q.strip_prefix('-') {
        return if digits(rest) {
            Err(RationalParseError::NegativeDenominator)
        } else {
            Err(RationalParseError::Malformed)
        };
    }
    if !digits(q) {
        return Err(RationalParseError::Malformed);
    }
    let numer: BigInt = p.parse().map_err(|_| RationalParseError::Malformed)?;
    let denom: BigInt = q.parse().map_err(|_| RationalParseError::Malformed)?;
    if denom.is_zero() {
        return Err(RationalParseError::ZeroDenominator);
    }
    Ok(Rational::new(numer, denom))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub(crate) fn in_unit_interval(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}
