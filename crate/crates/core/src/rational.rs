//! Exact rational numbers used for weightings, probabilities and LP data.

use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact binary expansion of a finite float. Returns `None` for NaN or infinities.
pub fn from_f64(value: f64) -> Option<Rational> {
    Rational::from_float(value)
}

/// `p/q` or `p` for integers.
pub fn format(r: &Rational) -> String {
    r.to_string()
}

/// Parses `"p/q"`, `"p"` or a decimal such as `"0.25"` exactly.
pub fn parse(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    if let Some((int_part, frac_part)) = text.split_once('.') {
        let negative = int_part.starts_with('-');
        let digits = frac_part.len() as u32;
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let int_digits = int_part.trim_start_matches(['-', '+']);
        let whole: BigInt = if int_digits.is_empty() { BigInt::zero() } else { int_digits.parse().ok()? };
        let frac: BigInt = frac_part.parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), digits as usize);
        let magnitude = Rational::new(whole * &scale + frac, scale);
        return Some(if negative { -magnitude } else { magnitude });
    }
    let value: BigInt = text.parse().ok()?;
    Some(Rational::from_integer(value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse("1/2"), Some(ratio(1, 2)));
        assert_eq!(parse(" 6/4 "), Some(ratio(3, 2)));
        assert_eq!(parse("3"), Some(integer(3)));
        assert_eq!(parse("0.25"), Some(ratio(1, 4)));
        assert_eq!(parse("-1.5"), Some(ratio(-3, 2)));
        assert_eq!(parse(".5"), Some(ratio(1, 2)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("abc"), None);
        assert_eq!(parse("1."), None);
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format(&ratio(10, 4)), "5/2");
        assert_eq!(format(&integer(3)), "3");
    }
}
