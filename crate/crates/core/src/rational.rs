//! Exact rational scalars.
//!
//! Every probability, cost and distortion in the analytic code paths is a
//! [`Rational`]; floats only appear when rendering output.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational as Rational;

/// `num / den` as a reduced rational. Panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"a/b"` or `"a"`. Decimal notation is rejected so that no value is
/// silently rounded on input.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Rational(text.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let valid = |s: &str, signed: bool| {
        let digits = if signed {
            s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s)
        } else {
            s
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"a/b"`, or `"a"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Decimal rendering with a fixed number of places after the point.
pub fn format_fixed(r: &Rational, places: usize) -> String {
    format!("{:.*}", places, to_f64(r))
}

/// Decimal rendering with `digits` significant digits.
pub fn format_significant(r: &Rational, digits: usize) -> String {
    let v = to_f64(r);
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let magnitude = v.abs().log10().floor() as i64;
    let places = (digits as i64 - 1 - magnitude).max(0) as usize;
    let s = format!("{:.*}", places, v);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn is_probability(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}

pub fn sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(Rational::zero(), |acc, v| acc + v)
}
