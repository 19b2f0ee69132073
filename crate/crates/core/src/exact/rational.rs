//! The exact scalar used everywhere, plus its text grammar.
//!
//! Accepted text: an optional `-`, one or more decimal digits, and
//! optionally `/` followed by a positive decimal denominator. No sign on the
//! denominator, no whitespace, no leading `+`. Output is always the reduced
//! form, with the denominator omitted when it is one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("invalid rational `{text}`"));
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    if !digits(num) {
        return Err(bad());
    }
    let mut numer: BigInt = num.parse().map_err(|_| bad())?;
    if neg {
        numer = -numer;
    }
    let denom: BigInt = match den {
        Some(d) => {
            if !digits(d) {
                return Err(bad());
            }
            let v: BigInt = d.parse().map_err(|_| bad())?;
            if v.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{text}`")));
            }
            v
        }
        None => BigInt::one(),
    };
    Ok(Rational::new(numer, denom))
}

/// Canonical text form: `n` or `n/d` with `d > 1`.
pub fn format_rational(value: &Rational) -> String {
    // BigRational's Display already omits a unit denominator; it is kept
    // reduced by construction.
    value.to_string()
}

pub fn sign(value: &Rational) -> i8 {
    if value.is_positive() {
        1
    } else if value.is_negative() {
        -1
    } else {
        0
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}
