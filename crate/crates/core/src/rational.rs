//! Exact rational numbers plus parsing and rendering helpers.

use num::bigint::BigInt;
use num::{BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"p/q"`, an integer, or a plain decimal such as `"-12.375"`.
///
/// Exponent notation and non-finite values are rejected.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let s = input.trim();
    let fail = |reason: &str| Error::ParseRational {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    if s.is_empty() {
        return Err(fail("empty string"));
    }
    if let Some((numer, denom)) = s.split_once('/') {
        let numer = parse_integer(numer.trim()).ok_or_else(|| fail("bad numerator"))?;
        let denom = parse_integer(denom.trim()).ok_or_else(|| fail("bad denominator"))?;
        if denom.is_zero() {
            return Err(fail("zero denominator"));
        }
        return Ok(Rational::new(numer, denom));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if (digits.is_empty() && frac.is_empty())
            || !digits.bytes().all(|b| b.is_ascii_digit())
            || !frac.bytes().all(|b| b.is_ascii_digit())
            || whole.len() - digits.len() > 1
        {
            return Err(fail("bad decimal"));
        }
        let mantissa: BigInt = format!("{digits}{frac}")
            .parse()
            .map_err(|_| fail("bad decimal"))?;
        let scale = num::pow(BigInt::from(10u32), frac.len());
        let value = Rational::new(mantissa, scale);
        return Ok(if negative { -value } else { value });
    }
    parse_integer(s)
        .map(Rational::from_integer)
        .ok_or_else(|| fail("not a rational number"))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Exact `p/q` form, or just `p` for integers. Inverse of [`parse_rational`].
pub fn format_exact(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Decimal rendering rounded half away from zero to at most `digits` fractional
/// digits, trailing zeros trimmed. Lossy; used for display only.
pub fn format_decimal(value: &Rational, digits: usize) -> String {
    let scale = num::pow(BigInt::from(10u32), digits);
    let scaled = value.abs() * Rational::from_integer(scale.clone());
    let half = Rational::new(BigInt::one(), BigInt::from(2u32));
    let rounded = (scaled + half).floor().to_integer();
    let (whole, frac) = rounded.div_rem(&scale);
    let sign = if value.is_negative() && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if digits == 0 || frac.is_zero() {
        return format!("{sign}{whole}");
    }
    let frac = format!("{:0>width$}", frac.to_string(), width = digits);
    format!("{sign}{whole}.{}", frac.trim_end_matches('0'))
}

/// Lossy conversion for plotting or logging.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("1/10").unwrap(), ratio(1, 10));
        assert_eq!(parse_rational("2/4").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational("0.1").unwrap(), ratio(1, 10));
        assert_eq!(parse_rational("-12.375").unwrap(), ratio(-12375, 1000));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("7.").unwrap(), int(7));
        assert_eq!(parse_rational(" 3/-6 ").unwrap(), ratio(-1, 2));
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in [
            "", "1/0", "abc", "1e3", "1.2.3", "--1", "1/", "/2", ".", "NaN", "inf", "- 1",
        ] {
            assert!(parse_rational(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn exact_format_round_trips() {
        for v in [ratio(1331, 10), int(-5), ratio(-7, 3), int(0)] {
            assert_eq!(parse_rational(&format_exact(&v)).unwrap(), v);
        }
        assert_eq!(format_exact(&ratio(1331, 10)), "1331/10");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(format_decimal(&ratio(1331, 10), 6), "133.1");
        assert_eq!(format_decimal(&ratio(-1, 3), 4), "-0.3333");
        assert_eq!(format_decimal(&ratio(2, 3), 2), "0.67");
        assert_eq!(format_decimal(&ratio(-1, 1000), 2), "0");
        assert_eq!(format_decimal(&int(890), 6), "890");
        assert_eq!(format_decimal(&ratio(5, 2), 0), "3");
    }
}
