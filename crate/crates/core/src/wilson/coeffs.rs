use super::Params;
use crate::error::{Error, Result};
use crate::field::{one_minus, Field, Frac};

/// Which neighbour a tridiagonal coefficient couples to: `Down` is the
/// `(n+1, n)` entry, `Diag` is `(n, n)`, `Up` is `(n-1, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoeffDir {
    Down,
    Diag,
    Up,
}

impl CoeffDir {
    pub const ALL: [CoeffDir; 3] = [CoeffDir::Down, CoeffDir::Diag, CoeffDir::Up];

    /// Index offset of the function value this coefficient multiplies.
    pub fn offset(self) -> i64 {
        match self {
            CoeffDir::Down => 1,
            CoeffDir::Diag => 0,
            CoeffDir::Up => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoeffFamily {
    Z,
    X,
    Zbar,
    Xbar,
}

/// The diagonal corrections `a_n` and `b_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarCoeff {
    A,
    B,
}

/// `λ(u; c) = (1 - 1/u)(1 - c q u)`.
pub fn lambda<F: Field>(u: &F, c: &F, q: &F) -> Result<F> {
    let inv = u.inv()?;
    Ok(one_minus(&inv) * one_minus(&(c.clone() * q.clone() * u.clone())))
}

/// `σ(x) = 1 + e + d + f + (1 + 1/e + 1/d + 1/f)/x`.
pub fn sigma<F: Field>(x: &F, p: &Params<F>) -> Result<F> {
    let inner = F::one() + p.e.inv()? + p.d.inv()? + p.f.inv()?;
    Ok(F::one() + p.e.clone() + p.d.clone() + p.f.clone() + inner.try_div(x)?)
}

/// Closed-form coefficients at one parameter point.
///
/// With `fault` set, `Z_{n+1,n}` and its barred analogue are shifted by one;
/// this exists only so the harness can prove that it notices.
pub(crate) struct Coeffs<'p, F: Field> {
    p: &'p Params<F>,
    fault: bool,
}

impl<'p, F: Field> Coeffs<'p, F> {
    pub fn new(p: &'p Params<F>, fault: bool) -> Self {
        Coeffs { p, fault }
    }

    fn z_down(&self, n: i64) -> Result<F> {
        let p = self.p;
        let qn1 = p.qp(n + 1);
        let v = Frac::new(n)
            .num(one_minus(&(p.b.clone() * qn1.clone())))
            .num(p.a.clone() - p.b.clone() * qn1.clone())
            .num(p.d.clone() - qn1.clone())
            .num(p.e.clone() - qn1.clone())
            .num(p.f.clone() - qn1.clone())
            .den("1 - a q^(n+1)", one_minus(&(p.a.clone() * qn1)))
            .den("1 - b q^(2n+2)", one_minus(&(p.b.clone() * p.qp(2 * n + 2))))
            .den("1 - b q^(2n+1)", one_minus(&(p.b.clone() * p.qp(2 * n + 1))))
            .build()?;
        Ok(self.faulty(v))
    }

    fn z_up(&self, n: i64) -> Result<F> {
        // (1 - q^n) vanishes identically at the boundary
        if n == 0 {
            return Ok(F::zero());
        }
        let p = self.p;
        let qn = p.qp(n);
        let bqn = p.b.clone() * qn.clone();
        Frac::new(n)
            .num(p.q.clone())
            .num(one_minus(&qn))
            .num(one_minus(&(p.a.clone() * qn.clone())))
            .num(one_minus(&(p.d.clone() * bqn.clone())))
            .num(one_minus(&(p.e.clone() * bqn.clone())))
            .num(one_minus(&(p.f.clone() * bqn.clone())))
            .den("a - b q^n", p.a.clone() - bqn)
            .den("1 - b q^(2n+1)", one_minus(&(p.b.clone() * p.qp(2 * n + 1))))
            .den("1 - b q^(2n)", one_minus(&(p.b.clone() * p.qp(2 * n))))
            .build()
    }

    pub fn a_n(&self, n: i64) -> Result<F> {
        let p = self.p;
        if n == 0 {
            // (1 - b/a)/(a - b) = 1/a, so b = a is not a pole here
            return Frac::new(n)
                .num(p.q.clone())
                .num(one_minus(&(p.a.clone() * p.d.clone())))
                .num(one_minus(&(p.a.clone() * p.e.clone())))
                .num(one_minus(&(p.a.clone() * p.f.clone())))
                .den("a", p.a.clone())
                .den("1 - a q^(n+1)", one_minus(&(p.a.clone() * p.q.clone())))
                .build();
        }
        Frac::new(n)
            .num(p.qp(n + 1))
            .num(one_minus(&p.b.try_div(&p.a)?))
            .num(one_minus(&(p.a.clone() * p.d.clone())))
            .num(one_minus(&(p.a.clone() * p.e.clone())))
            .num(one_minus(&(p.a.clone() * p.f.clone())))
            .den("1 - a q^(n+1)", one_minus(&(p.a.clone() * p.qp(n + 1))))
            .den("a - b q^n", p.a.clone() - p.b.clone() * p.qp(n))
            .build()
    }

    fn zbar_down(&self, n: i64) -> Result<F> {
        let p = self.p;
        let qn1 = p.qp(n + 1);
        let v = Frac::new(n)
            .num(p.q.clone() * p.b.clone())
            .num(p.c.clone() - p.a.clone() * p.qp(n))
            .num(one_minus(&(p.b.clone() * qn1.clone())))
            .num(p.d.clone() - qn1.clone())
            .num(p.e.clone() - qn1.clone())
            .num(p.f.clone() - qn1)
            .den("1 - b q^(2n+2)", one_minus(&(p.b.clone() * p.qp(2 * n + 2))))
            .den("1 - b q^(2n+1)", one_minus(&(p.b.clone() * p.qp(2 * n + 1))))
            .den("a - b c q^(n+2)", p.a.clone() - p.b.clone() * p.c.clone() * p.qp(n + 2))
            .build()?;
        Ok(self.faulty(v))
    }

    fn zbar_up(&self, n: i64) -> Result<F> {
        if n == 0 {
            return Ok(F::zero());
        }
        let p = self.p;
        let qn = p.qp(n);
        let bqn = p.b.clone() * qn.clone();
        Frac::new(n)
            .num(p.a.clone() - p.b.clone() * p.c.clone() * p.qp(n + 1))
            .num(one_minus(&qn))
            .num(one_minus(&(p.d.clone() * bqn.clone())))
            .num(one_minus(&(p.e.clone() * bqn.clone())))
            .num(one_minus(&(p.f.clone() * bqn)))
            .den("b", p.b.clone())
            .den("1 - b q^(2n+1)", one_minus(&(p.b.clone() * p.qp(2 * n + 1))))
            .den("1 - b q^(2n)", one_minus(&(p.b.clone() * p.qp(2 * n))))
            .den("c - a q^(n-1)", p.c.clone() - p.a.clone() * p.qp(n - 1))
            .build()
    }

    pub fn b_n(&self, n: i64) -> Result<F> {
        let p = self.p;
        let (a, b, c, d, e, f, q) = (&p.a, &p.b, &p.c, &p.d, &p.e, &p.f, &p.q);
        Frac::new(n)
            .num(p.qp(n - 1) * b.clone() * c.clone())
            .num(q.clone() - a.clone() * e.clone() * f.clone())
            .num(q.clone() - a.clone() * d.clone() * e.clone())
            .num(q.clone() - a.clone() * d.clone() * f.clone())
            .num(one_minus(&(c.clone() * q.clone()).try_div(a)?))
            .den("c - a q^(n-1)", c.clone() - a.clone() * p.qp(n - 1))
            .den("a - b c q^(n+2)", a.clone() - b.clone() * c.clone() * p.qp(n + 2))
            .build()
    }

    fn faulty(&self, v: F) -> F {
        if self.fault {
            v + F::one()
        } else {
            v
        }
    }

    /// Entries of Z (or Z̄ when `barred`).
    pub fn z(&self, barred: bool, dir: CoeffDir, n: usize) -> Result<F> {
        let n = n as i64;
        match (barred, dir) {
            (false, CoeffDir::Down) => self.z_down(n),
            (false, CoeffDir::Up) => self.z_up(n),
            (false, CoeffDir::Diag) => Ok(-(self.z_down(n)? + self.z_up(n)? + self.a_n(n)?)),
            (true, CoeffDir::Down) => self.zbar_down(n),
            (true, CoeffDir::Up) => self.zbar_up(n),
            (true, CoeffDir::Diag) => Ok(-(self.zbar_down(n)? + self.zbar_up(n)? + self.b_n(n)?)),
        }
    }

    /// The λ argument attached to an off-diagonal entry of X (or X̄).
    fn x_arg(&self, barred: bool, dir: CoeffDir, n: usize) -> Result<F> {
        let p = self.p;
        let n = n as i64;
        match (barred, dir) {
            (false, CoeffDir::Down) => p.qp(-n - 1).try_div(&p.a),
            (false, CoeffDir::Up) => (p.b.clone() * p.qp(n)).try_div(&p.a),
            (true, CoeffDir::Down) => (p.b.clone() * p.qp(n + 1)).try_div(&p.a),
            (true, CoeffDir::Up) => p.qp(-n).try_div(&p.a),
            (_, CoeffDir::Diag) => unreachable!("diagonal entries are sums"),
        }
    }

    /// Entries of the unshifted X (or X̄).
    pub fn x(&self, barred: bool, dir: CoeffDir, n: usize) -> Result<F> {
        let p = self.p;
        match dir {
            CoeffDir::Diag => Ok(-(self.x(barred, CoeffDir::Down, n)? + self.x(barred, CoeffDir::Up, n)?)),
            _ => {
                let u = self.x_arg(barred, dir, n)?;
                Ok(self.z(barred, dir, n)? * lambda(&u, &p.c, &p.q)?)
            }
        }
    }

    /// X + ρ Z.
    pub fn x_shifted(&self, barred: bool, dir: CoeffDir, n: usize, rho: &F) -> Result<F> {
        let x = self.x(barred, dir, n)?;
        if rho.is_zero() {
            return Ok(x);
        }
        Ok(x + rho.clone() * self.z(barred, dir, n)?)
    }
}

/// One closed-form coefficient. For the X families the result is
/// `X + rho·Z`; pass `rho = 0` for the unshifted operator.
pub fn coeff<F: Field>(family: CoeffFamily, dir: CoeffDir, n: usize, params: &Params<F>, rho: &F) -> Result<F> {
    let c = Coeffs::new(params, false);
    match family {
        CoeffFamily::Z => c.z(false, dir, n),
        CoeffFamily::Zbar => c.z(true, dir, n),
        CoeffFamily::X => c.x_shifted(false, dir, n, rho),
        CoeffFamily::Xbar => c.x_shifted(true, dir, n, rho),
    }
}

pub fn coeff_scalar<F: Field>(which: ScalarCoeff, n: usize, params: &Params<F>) -> Result<F> {
    let c = Coeffs::new(params, false);
    match which {
        ScalarCoeff::A => c.a_n(n as i64),
        ScalarCoeff::B => c.b_n(n as i64),
    }
}

/// The default affine shift `ρ = -(1 + q c)`.
pub(crate) fn default_rho<F: Field>(p: &Params<F>) -> F {
    -(F::one() + p.q.clone() * p.c.clone())
}

pub(crate) fn ensure_nonzero<F: Field>(v: &F, name: &str, index: i64) -> Result<()> {
    if v.is_zero() {
        Err(Error::degenerate(name, index))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_rational, Rational};

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn sample() -> Params<Rational> {
        Params::with_dependent_f(r("1/2"), r("2"), r("3"), r("5"), r("7"), r("11")).unwrap()
    }

    #[test]
    fn lambda_examples() {
        let (q, c) = (r("1/2"), r("1/3"));
        assert_eq!(lambda(&r("1"), &c, &q).unwrap(), r("0"));
        assert_eq!(lambda(&q, &c, &q).unwrap(), r("-11/12"));
        assert_eq!(lambda(&r("6"), &c, &q).unwrap(), r("0"));
        assert!(lambda(&r("0"), &c, &q).is_err());
    }

    #[test]
    fn sigma_examples() {
        let one = r("1");
        let p = Params {
            q: r("1/2"),
            a: one.clone(),
            b: one.clone(),
            c: one.clone(),
            d: one.clone(),
            e: one.clone(),
            f: one.clone(),
        };
        assert_eq!(sigma(&one, &p).unwrap(), r("8"));
        let p = sample();
        let swapped = Params {
            d: p.e.clone(),
            e: p.d.clone(),
            ..p.clone()
        };
        assert_eq!(sigma(&r("3/7"), &p).unwrap(), sigma(&r("3/7"), &swapped).unwrap());
    }

    #[test]
    fn z_down_by_substitution() {
        let q = r("1/2");
        let p = Params::with_dependent_f(q.clone(), r("3"), r("3"), r("5"), r("7"), r("11")).unwrap();
        // (1-bq)(a-bq)(d-q)(e-q)(f-q) / ((1-aq)(1-bq^2)(1-bq)) at n = 0
        let expected = (r("1") - r("3/2"))
            * (r("3") - r("3/2"))
            * (r("7") - q.clone())
            * (r("11") - q.clone())
            * (r("1/1155") - q.clone())
            / ((r("1") - r("3/2")) * (r("1") - r("3/4")) * (r("1") - r("3/2")));
        assert_eq!(coeff(CoeffFamily::Z, CoeffDir::Down, 0, &p, &r("0")).unwrap(), expected);
        // a = 2 makes 1 - a q vanish
        let got = coeff(CoeffFamily::Z, CoeffDir::Down, 0, &sample(), &r("0"));
        assert!(matches!(got, Err(Error::DegenerateParameter { ref factor, index: 0 }) if factor == "1 - a q^(n+1)"));
    }

    #[test]
    fn vanishing_entries() {
        let p = sample();
        let zero = r("0");
        assert_eq!(coeff(CoeffFamily::Z, CoeffDir::Up, 0, &p, &zero).unwrap(), zero);
        assert_eq!(coeff(CoeffFamily::Zbar, CoeffDir::Up, 0, &p, &zero).unwrap(), zero);
        // a_n vanishes with b = a and with d = 1/a
        let p = Params::with_dependent_f(r("1/2"), r("3"), r("3"), r("5"), r("7"), r("11")).unwrap();
        assert_eq!(coeff_scalar(ScalarCoeff::A, 2, &p).unwrap(), zero);
        let p = Params::with_dependent_f(r("1/2"), r("3"), r("2"), r("5"), r("1/3"), r("11")).unwrap();
        assert_eq!(coeff_scalar(ScalarCoeff::A, 2, &p).unwrap(), zero);
    }

    #[test]
    fn closure_truncates_z() {
        // f = q^(N+1) kills Z_{N+1,N}
        let q = r("1/3");
        let n = 4;
        let f = q.powi(n + 1).unwrap();
        let (b, c, d) = (r("2"), r("5"), r("7"));
        let e = (b.clone() * c.clone() * d.clone() * f.clone()).inv().unwrap();
        let p = Params::new(q, r("3/2"), b, c, d, e, f).unwrap();
        let zero = r("0");
        assert_eq!(
            coeff(CoeffFamily::Z, CoeffDir::Down, n as usize, &p, &zero).unwrap(),
            zero
        );
        assert_eq!(
            coeff(CoeffFamily::Zbar, CoeffDir::Down, n as usize, &p, &zero).unwrap(),
            zero
        );
    }

    #[test]
    fn diagonal_sums() {
        let p = Params::with_dependent_f(r("1/2"), r("5/3"), r("3"), r("5"), r("7"), r("11")).unwrap();
        let zero = r("0");
        for n in 0..4 {
            let s: Rational = CoeffDir::ALL
                .iter()
                .map(|&d| coeff(CoeffFamily::X, d, n, &p, &zero).unwrap())
                .fold(r("0"), |a, b| a + b);
            assert_eq!(s, zero);
            let s: Rational = CoeffDir::ALL
                .iter()
                .map(|&d| coeff(CoeffFamily::Z, d, n, &p, &zero).unwrap())
                .fold(r("0"), |a, b| a + b);
            assert_eq!(s, -coeff_scalar(ScalarCoeff::A, n, &p).unwrap());
        }
    }

    #[test]
    fn equal_a_and_b_is_regular() {
        let p = Params::with_dependent_f(r("1/2"), r("5/3"), r("5/3"), r("5"), r("7"), r("11")).unwrap();
        for n in 1..5 {
            assert_eq!(coeff_scalar(ScalarCoeff::A, n, &p).unwrap(), r("0"));
        }
        // the n = 0 value is the limit b -> a of the general formula
        let a0 = coeff_scalar(ScalarCoeff::A, 0, &p).unwrap();
        let near = Params::with_dependent_f(r("1/2"), r("5/3"), r("3"), r("5"), r("7"), r("11")).unwrap();
        let k = Coeffs::new(&near, false);
        let general = near.q.clone()
            * one_minus(&near.b.try_div(&near.a).unwrap())
            * one_minus(&(near.a.clone() * near.d.clone()))
            * one_minus(&(near.a.clone() * near.e.clone()))
            * one_minus(&(near.a.clone() * near.f.clone()))
            / (one_minus(&(near.a.clone() * near.q.clone())) * (near.a.clone() - near.b.clone()));
        assert_eq!(k.a_n(0).unwrap(), general);
        assert_eq!(
            a0 * p.a.clone() * one_minus(&(p.a.clone() * p.q.clone())),
            p.q.clone()
                * one_minus(&(p.a.clone() * p.d.clone()))
                * one_minus(&(p.a.clone() * p.e.clone()))
                * one_minus(&(p.a.clone() * p.f.clone()))
        );
    }
}
