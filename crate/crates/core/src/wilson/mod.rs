//! Wilson rational functions, their normalizations and q-Racah limits,
//! the coefficients of their recurrence and difference equations, and
//! exact residuals for every scalar identity relating them.

pub(crate) mod coeffs;
mod degree;
mod families;
mod identities;
mod limits;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

pub use coeffs::{coeff, coeff_scalar, lambda, sigma, CoeffDir, CoeffFamily, ScalarCoeff};
pub use degree::p_degree_profile;
pub use families::{eval_family, mu, tau, FamilyTag};
pub use identities::{
    brace_residual, eigen_shift_residual, residual, rii_prefactor_residual, Brace, Evaluator, Identity,
};
pub use limits::{limit_gap, watson_residual, watson_sides, LimitPair, WatsonSides};

/// The parameter point `(q, a, b, c, d, e, f)`.
///
/// Constructed through [`Params::new`], which enforces `b c d e f = 1`,
/// nonzero parameters and `q ∉ {0, 1, -1}`. Entries may live in any
/// [`Field`], in particular Q(t) along a limit curve.
#[derive(Clone, PartialEq)]
pub struct Params<F: Field> {
    pub q: F,
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
    pub e: F,
    pub f: F,
}

impl<F: Field> Params<F> {
    pub fn new(q: F, a: F, b: F, c: F, d: F, e: F, f: F) -> Result<Self> {
        let p = Params { q, a, b, c, d, e, f };
        p.validate()?;
        Ok(p)
    }

    /// Solves the constraint for `f`.
    pub fn with_dependent_f(q: F, a: F, b: F, c: F, d: F, e: F) -> Result<Self> {
        let bcde = b.clone() * c.clone() * d.clone() * e.clone();
        let f = bcde
            .inv()
            .map_err(|_| Error::InvalidInput("b c d e must be nonzero".into()))?;
        Self::new(q, a, b, c, d, e, f)
    }

    fn validate(&self) -> Result<()> {
        let q = &self.q;
        if q.is_zero() || q.is_one() || (-q.clone()).is_one() {
            return Err(Error::InvalidInput(format!("q must avoid 0, 1, -1 (got {q})")));
        }
        for (name, v) in self.named() {
            if v.is_zero() {
                return Err(Error::InvalidInput(format!("parameter {name} is zero")));
            }
        }
        let prod = self.b.clone() * self.c.clone() * self.d.clone() * self.e.clone() * self.f.clone();
        if !prod.is_one() {
            return Err(Error::InvalidInput(format!("b c d e f = {prod}, expected 1")));
        }
        Ok(())
    }

    /// The same point with `b` and `c` exchanged.
    pub fn swap_bc(&self) -> Self {
        Params {
            b: self.c.clone(),
            c: self.b.clone(),
            ..self.clone()
        }
    }

    /// `(name, value)` pairs in the order q, a, b, c, d, e, f.
    pub fn named(&self) -> [(&'static str, &F); 7] {
        [
            ("q", &self.q),
            ("a", &self.a),
            ("b", &self.b),
            ("c", &self.c),
            ("d", &self.d),
            ("e", &self.e),
            ("f", &self.f),
        ]
    }

    /// Applies `g` entrywise, e.g. to specialize Q(t) parameters at a point.
    pub fn try_map<G: Field>(&self, mut g: impl FnMut(&F) -> Result<G>) -> Result<Params<G>> {
        Ok(Params {
            q: g(&self.q)?,
            a: g(&self.a)?,
            b: g(&self.b)?,
            c: g(&self.c)?,
            d: g(&self.d)?,
            e: g(&self.e)?,
            f: g(&self.f)?,
        })
    }

    /// `q^k`; never fails because `q` is nonzero by construction.
    pub fn qp(&self, k: i64) -> F {
        self.q.powi(k).expect("q is nonzero")
    }
}

impl<F: Field> fmt::Debug for Params<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Params(")?;
        for (i, (name, v)) in self.named().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{name}={v}")?;
        }
        write!(f, ")")
    }
}
