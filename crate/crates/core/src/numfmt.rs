//! Number parsing and printing shared by the file formats and the CLI.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberError {
    #[error("empty number")]
    Empty,
    #[error("malformed rational `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("decimal `{0}` is not allowed here; write it as a fraction like 1/2")]
    DecimalNotAllowed(String),
}

/// Parses `p/q` or an integer into an exact rational. Decimals are rejected.
pub fn parse_rational(text: &str) -> Result<Rational64, NumberError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(NumberError::Empty);
    }
    if s.contains('.') || s.contains('e') || s.contains('E') {
        return Err(NumberError::DecimalNotAllowed(s.to_string()));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: i64 = num.parse().map_err(|_| NumberError::Malformed(s.to_string()))?;
    let den: i64 = den.parse().map_err(|_| NumberError::Malformed(s.to_string()))?;
    if den == 0 {
        return Err(NumberError::ZeroDenominator(s.to_string()));
    }
    Ok(Rational64::new(num, den))
}

/// Parses `p/q`, an integer, or a plain decimal (`-0.375`) exactly.
pub fn parse_exact(text: &str) -> Result<BigRational, NumberError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(NumberError::Empty);
    }
    let bad = || NumberError::Malformed(s.to_string());
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n.trim().parse().map_err(|_| bad())?;
        let den: BigInt = d.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(NumberError::ZeroDenominator(s.to_string()));
        }
        return Ok(BigRational::new(num, den));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if (int_part.is_empty() && frac_part.is_empty())
        || !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mantissa: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let scale = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = BigRational::new(mantissa, scale);
    Ok(if negative { -value } else { value })
}

/// Prints a rational as `p/q`, or `p` when the denominator is one.
pub fn rational_string<T>(value: &num_rational::Ratio<T>) -> String
where
    T: Clone + num_integer::Integer + std::fmt::Display,
{
    if value.denom().is_one() {
        format!("{}", value.numer())
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn big_rational_to_f64(value: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(if value.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

pub const SIGNIFICANT_DIGITS: usize = 9;

/// Formats a float with nine significant digits, trailing zeros trimmed.
///
/// Output never depends on locale: `.` is the only separator and no grouping
/// is applied. Magnitudes outside `[1e-6, 1e15)` switch to exponent form.
pub fn format_sig(x: f64) -> String {
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs();
    if !(1e-6..1e15).contains(&magnitude) {
        let s = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
        let (mantissa, exp) = s.split_once('e').expect("exponent form");
        return format!("{}e{}", trim_zeros(mantissa), exp);
    }
    // Round first so that e.g. 9.999999999 lands on 10 before choosing decimals.
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x);
    let exponent = rounded.abs().log10().floor() as i32;
    let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exponent).max(0) as usize;
    let s = trim_zeros(&format!("{:.*}", decimals, rounded)).to_string();
    if s == "-0" {
        "0".to_string()
    } else {
        s
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_parse_exactly() {
        assert_eq!(parse_rational("1/2").unwrap(), Rational64::new(1, 2));
        assert_eq!(parse_rational(" -3 ").unwrap(), Rational64::from_integer(-3));
        assert_eq!(parse_rational("2/4").unwrap(), Rational64::new(1, 2));
        assert!(matches!(parse_rational("0.5"), Err(NumberError::DecimalNotAllowed(_))));
        assert!(matches!(parse_rational("1/0"), Err(NumberError::ZeroDenominator(_))));
        assert!(matches!(parse_rational("x"), Err(NumberError::Malformed(_))));
    }

    #[test]
    fn decimals_parse_exactly() {
        let tenth = BigRational::new(BigInt::from(2), BigInt::from(5));
        assert_eq!(parse_exact("0.4").unwrap(), tenth);
        assert_eq!(parse_exact("-1/2").unwrap(), BigRational::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(parse_exact("-.5").unwrap(), BigRational::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(parse_exact("3").unwrap(), BigRational::from_integer(BigInt::from(3)));
        assert!(parse_exact(".").is_err());
        assert!(parse_exact("1e3").is_err());
    }

    #[test]
    fn nine_significant_digits() {
        assert_eq!(format_sig(1.2642411176571153), "1.26424112");
        assert_eq!(format_sig(0.6321205588285577), "0.632120559");
        assert_eq!(format_sig(1.5), "1.5");
        assert_eq!(format_sig(2.0), "2");
        assert_eq!(format_sig(-0.0), "0");
        assert_eq!(format_sig(9.9999999999), "10");
        assert_eq!(format_sig(123456789.4), "123456789");
        assert_eq!(format_sig(1.0e-9), "1e-9");
        assert_eq!(format_sig(-2.5e20), "-2.5e20");
    }
}
