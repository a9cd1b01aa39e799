//! Exact arithmetic: arbitrary-precision rationals, univariate polynomials
//! over Q, and normalized rational functions Q(t), all behind [`Field`].

mod poly;
mod ratfun;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub use poly::{poly_gcd, Poly};
pub use ratfun::{leading_at_infinity, ratfun_eval, RatFun};
pub use rational::{parse_rational, rational_to_decimal, Rational};

/// An exact, decidable field.
///
/// Addition, subtraction, multiplication and negation come from the std
/// operator traits (by value). Division is fallible and goes through
/// [`Field::try_div`].
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_int(value: i64) -> Self;
    fn from_rational(value: &Rational) -> Self;

    fn inv(&self) -> Result<Self>;

    fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.inv()?)
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Integer power; negative exponents go through [`Field::inv`].
    fn powi(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq.clone();
            }
            e >>= 1;
            if e > 0 {
                sq = sq.clone() * sq;
            }
        }
        Ok(acc)
    }
}

/// `1 - x`, the building block of every Pochhammer factor.
pub fn one_minus<F: Field>(x: &F) -> F {
    F::one() - x.clone()
}

/// Product of an iterator of field elements.
pub fn product<F: Field, I: IntoIterator<Item = F>>(items: I) -> F {
    items.into_iter().fold(F::one(), |acc, x| acc * x)
}

/// A quotient of products whose denominator factors carry names.
///
/// Every closed-form coefficient in this crate is such a quotient; building
/// it through `Frac` means a vanishing denominator is reported by name
/// instead of surfacing as an anonymous division by zero.
#[derive(Debug, Clone)]
pub struct Frac<F: Field> {
    num: F,
    den: F,
    index: i64,
    zero_den: Option<String>,
}

impl<F: Field> Frac<F> {
    pub fn new(index: i64) -> Self {
        Frac {
            num: F::one(),
            den: F::one(),
            index,
            zero_den: None,
        }
    }

    pub fn num(mut self, factor: F) -> Self {
        self.num = self.num * factor;
        self
    }

    pub fn den(mut self, name: &str, factor: F) -> Self {
        if self.zero_den.is_none() && factor.is_zero() {
            self.zero_den = Some(name.to_string());
        }
        self.den = self.den * factor;
        self
    }

    pub fn build(self) -> Result<F> {
        if let Some(factor) = self.zero_den {
            return Err(Error::DegenerateParameter {
                factor,
                index: self.index,
            });
        }
        self.num.try_div(&self.den)
    }
}
