use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{poly_gcd, Field, Poly, Rational};
use crate::error::{Error, Result};

/// Element of Q(t) in canonical form: coprime numerator and monic
/// denominator. Two equal functions therefore have identical fields.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFun {
                num,
                den: Poly::constant(Rational::one()),
            };
        }
        let g = poly_gcd(&num, &den).expect("denominator is nonzero");
        let (num, _) = num.div_rem(&g).expect("gcd is nonzero");
        let (den, _) = den.div_rem(&g).expect("gcd is nonzero");
        let lc = den.leading().expect("nonzero").inv().expect("nonzero");
        RatFun {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun {
            num: p,
            den: Poly::constant(Rational::one()),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::from_poly(Poly::t())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// `Some(c)` when the function is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(Rational::zero()),
            (Some(0), Some(0)) => Some(self.num.coeffs()[0].clone()),
            _ => None,
        }
    }
}

/// Behaviour at t = ∞: `f(t) ~ c·t^p`. Errors on the zero function.
pub fn leading_at_infinity(f: &RatFun) -> Result<(i64, Rational)> {
    let (Some(dn), Some(lc_num)) = (f.num.degree(), f.num.leading()) else {
        return Err(Error::ZeroFunction);
    };
    let dd = f.den.degree().expect("denominator is nonzero");
    let lc_den = f.den.leading().expect("denominator is nonzero");
    Ok((dn as i64 - dd as i64, lc_num.clone() / lc_den.clone()))
}

pub fn ratfun_eval(f: &RatFun, t0: &Rational) -> Result<Rational> {
    let d = f.den.eval(t0);
    if d.is_zero() {
        return Err(Error::PoleAtPoint(t0.to_string()));
    }
    Ok(f.num.eval(t0) / d)
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        if self.den == rhs.den {
            return RatFun::normalized(self.num + rhs.num, self.den);
        }
        let num = &self.num * &rhs.den + &rhs.num * &self.den;
        RatFun::normalized(num, &self.den * &rhs.den)
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, rhs: RatFun) -> RatFun {
        self + (-rhs)
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFun::zero();
        }
        // cross-cancel first so the products stay small
        let g1 = poly_gcd(&self.num, &rhs.den).expect("nonzero");
        let g2 = poly_gcd(&rhs.num, &self.den).expect("nonzero");
        let (n1, _) = self.num.div_rem(&g1).expect("nonzero");
        let (d2, _) = rhs.den.div_rem(&g1).expect("nonzero");
        let (n2, _) = rhs.num.div_rem(&g2).expect("nonzero");
        let (d1, _) = self.den.div_rem(&g2).expect("nonzero");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.leading().expect("nonzero").inv().expect("nonzero");
        RatFun {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }
}

impl Field for RatFun {
    fn zero() -> Self {
        RatFun::from_poly(Poly::zero())
    }

    fn one() -> Self {
        RatFun::constant(Rational::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn from_int(value: i64) -> Self {
        RatFun::constant(Rational::from_int(value))
    }

    fn from_rational(value: &Rational) -> Self {
        RatFun::constant(value.clone())
    }

    fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = self.num.leading().expect("nonzero").inv()?;
        Ok(RatFun {
            num: self.den.scale(&lc),
            den: self.num.scale(&lc),
        })
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFun {
        RatFun::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn division_cancels_common_factor() {
        // (t^2 - 1)/(t - 1) = t + 1
        let f = RatFun::from_poly(p(&[-1, 0, 1]));
        let g = RatFun::from_poly(p(&[-1, 1]));
        assert_eq!(f.try_div(&g).unwrap(), RatFun::from_poly(p(&[1, 1])));
    }

    #[test]
    fn canonical_form() {
        let a = rf(&[2, 2], &[4, 0, 4]); // (2t+2)/(4t^2+4)
        let b = rf(&[-1, -1], &[-2, 0, -2]);
        assert_eq!(a, b);
        assert!(a.den().leading().unwrap().is_one());
        assert!(RatFun::new(p(&[1]), Poly::zero()).is_err());
    }

    #[test]
    fn leading_terms() {
        assert_eq!(
            leading_at_infinity(&rf(&[0, 1, 3], &[1, 1])).unwrap(),
            (1, Rational::from_int(3))
        );
        assert_eq!(
            leading_at_infinity(&RatFun::from_int(5)).unwrap(),
            (0, Rational::from_int(5))
        );
        assert_eq!(leading_at_infinity(&rf(&[1], &[0, 1])).unwrap(), (-1, Rational::one()));
        assert_eq!(leading_at_infinity(&RatFun::zero()), Err(Error::ZeroFunction));
    }

    #[test]
    fn evaluation() {
        let f = RatFun::from_poly(p(&[-1, 0, 1]))
            .try_div(&RatFun::from_poly(p(&[-1, 1])))
            .unwrap();
        assert_eq!(ratfun_eval(&f, &Rational::from_int(2)).unwrap(), Rational::from_int(3));
        assert_eq!(ratfun_eval(&f, &Rational::from_int(-1)).unwrap(), Rational::zero());
        let pole = rf(&[1], &[-1, 1]);
        assert!(matches!(
            ratfun_eval(&pole, &Rational::one()),
            Err(Error::PoleAtPoint(_))
        ));
    }
}
