use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Field;
use crate::error::{Error, Result};

/// Arbitrary-precision rational; always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn from_int(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn from_rational(value: &Rational) -> Self {
        value.clone()
    }

    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

/// Parses `"p/q"` or `"p"` (ASCII, base 10, optional leading sign).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::InvalidInput(format!("not a rational: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

/// Short decimal rendering used in report witnesses, e.g. `-3.1416e2`.
///
/// Computed from the exact value with integer arithmetic; no floats involved.
pub fn rational_to_decimal(value: &Rational, digits: usize) -> String {
    if Zero::is_zero(value) {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let abs = value.abs();
    let (num, den) = (abs.numer().clone(), abs.denom().clone());
    // exponent estimate from digit counts, then correct by one step
    let mut exp = num.to_string().len() as i64 - den.to_string().len() as i64;
    let ten = BigInt::from(10);
    let scaled = |e: i64| -> (BigInt, BigInt) {
        if e >= 0 {
            (num.clone(), den.clone() * ten.pow(e as u32))
        } else {
            (num.clone() * ten.pow((-e) as u32), den.clone())
        }
    };
    let (mut n, mut d) = scaled(exp);
    if n < d {
        exp -= 1;
        (n, d) = scaled(exp);
    }
    let mantissa = (n * ten.pow(digits as u32)).div_floor(&d);
    let m = mantissa.to_string();
    let (head, tail) = m.split_at(1);
    let sign = if negative { "-" } else { "" };
    if exp == 0 {
        format!("{sign}{head}.{tail}")
    } else {
        format!("{sign}{head}.{tail}e{exp}")
    }
}

#[cfg(test)]
mod tests {
    use super::{parse_rational, rational_to_decimal, Rational};
    use crate::error::Error;
    use crate::field::Field;

    fn r(text: &str) -> Rational {
        parse_rational(text).unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(r("6/4").to_string(), "3/2");
        assert_eq!(r("-7").to_string(), "-7");
        assert_eq!(r(" 3 / -9 ").to_string(), "-1/3");
        assert_eq!(r("0/5").to_string(), "0");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn sums_and_inverse() {
        assert_eq!(r("1/2") + r("1/3"), r("5/6"));
        let x = r("-13/7");
        assert!((x.clone() * x.inv().unwrap()).is_one());
        assert_eq!(Rational::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn pow_handles_negative_exponents() {
        assert_eq!(r("2/3").powi(-2).unwrap(), r("9/4"));
        assert_eq!(r("2/3").powi(0).unwrap(), r("1"));
        assert_eq!(r("-1/2").powi(5).unwrap(), r("-1/32"));
        assert!(Rational::zero().powi(-1).is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rational_to_decimal(&r("1/3"), 4), "3.3333e-1");
        assert_eq!(rational_to_decimal(&r("-314159/1000"), 4), "-3.1415e2");
        assert_eq!(rational_to_decimal(&r("7"), 2), "7.00");
        assert_eq!(rational_to_decimal(&r("10"), 2), "1.00e1");
        assert_eq!(rational_to_decimal(&r("0"), 2), "0");
    }
}
