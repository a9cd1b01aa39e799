use super::coeffs::ensure_nonzero;
use super::families::{eval_family, FamilyTag};
use super::Params;
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::qseries::{phi, qpoch_multi, PhiSpec};

/// A Wilson family paired with one of its ₄φ₃ limits, together with the
/// curve `t ↦ Params` along which the limit is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LimitPair {
    /// `W → R` as `a = t → ∞`.
    R,
    /// `W → R1` as `c = t → ∞`, `f = 1/(b t d e)`.
    R1,
    /// `Wbar → R1bar` along the same curve as `R1`.
    R1bar,
    /// `W → R2` as `c = t → ∞`, `b = 1/(t d e f)`.
    R2,
    /// `Wbar → R2bar` along the same curve as `R2`.
    R2bar,
    /// `W → R3` as `e = t → ∞`, `f = 1/(b c d t)`.
    R3,
}

impl LimitPair {
    pub const ALL: [LimitPair; 6] = [
        LimitPair::R,
        LimitPair::R1,
        LimitPair::R1bar,
        LimitPair::R2,
        LimitPair::R2bar,
        LimitPair::R3,
    ];

    pub fn name(self) -> &'static str {
        self.limit_family().name()
    }

    pub fn parse(name: &str) -> Result<Self> {
        LimitPair::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::InvalidInput(format!("unknown limit pair {name:?}")))
    }

    pub fn wilson_family(self) -> FamilyTag {
        match self {
            LimitPair::R1bar | LimitPair::R2bar => FamilyTag::Wbar,
            _ => FamilyTag::W,
        }
    }

    pub fn limit_family(self) -> FamilyTag {
        match self {
            LimitPair::R => FamilyTag::R,
            LimitPair::R1 => FamilyTag::R1,
            LimitPair::R1bar => FamilyTag::R1bar,
            LimitPair::R2 => FamilyTag::R2,
            LimitPair::R2bar => FamilyTag::R2bar,
            LimitPair::R3 => FamilyTag::R3,
        }
    }

    /// The point on the limit curve at parameter `t`, with `b c d e f = 1`
    /// re-imposed through the dependent parameter.
    pub fn instantiate<F: Field>(self, base: &Params<F>, t: &F) -> Result<Params<F>> {
        let p = base;
        match self {
            LimitPair::R => Params::new(
                p.q.clone(),
                t.clone(),
                p.b.clone(),
                p.c.clone(),
                p.d.clone(),
                p.e.clone(),
                p.f.clone(),
            ),
            LimitPair::R1 | LimitPair::R1bar => Params::with_dependent_f(
                p.q.clone(),
                p.a.clone(),
                p.b.clone(),
                t.clone(),
                p.d.clone(),
                p.e.clone(),
            ),
            LimitPair::R2 | LimitPair::R2bar => {
                let b = (t.clone() * p.d.clone() * p.e.clone() * p.f.clone()).inv()?;
                Params::new(
                    p.q.clone(),
                    p.a.clone(),
                    b,
                    t.clone(),
                    p.d.clone(),
                    p.e.clone(),
                    p.f.clone(),
                )
            }
            LimitPair::R3 => Params::with_dependent_f(
                p.q.clone(),
                p.a.clone(),
                p.b.clone(),
                p.c.clone(),
                p.d.clone(),
                t.clone(),
            ),
        }
    }
}

/// `|W-side(t) - limit-side|` at `(n, x)`, exactly.
pub fn limit_gap(pair: LimitPair, n: usize, x: usize, base: &Params<Rational>, t: &Rational) -> Result<Rational> {
    let limit = eval_family(pair.limit_family(), n, x, base)?;
    let point = pair.instantiate(base, t)?;
    let value = eval_family(pair.wilson_family(), n, x, &point)?;
    let gap = value - limit;
    Ok(if gap < Rational::zero() { -gap } else { gap })
}

/// The pieces of Watson's transformation: the very-well-poised ₈φ₇ on the
/// left, and the prefactor and balanced ₄φ₃ on the right.
pub struct WatsonSides<F: Field> {
    pub lhs: F,
    pub prefactor: F,
    pub series: F,
}

pub fn watson_sides<F: Field>(a: &F, b: &F, c: &F, d: &F, e: &F, n: usize, q: &F) -> Result<WatsonSides<F>> {
    let qn = q.powi(-(n as i64))?;
    let aq = a.clone() * q.clone();
    let z =
        (a.clone() * a.clone() * q.powi(n as i64 + 2)?).try_div(&(b.clone() * c.clone() * d.clone() * e.clone()))?;
    let lhs = phi(&PhiSpec::new(
        vec![a.clone(), b.clone(), c.clone(), d.clone(), e.clone(), qn.clone()],
        vec![
            aq.try_div(b)?,
            aq.try_div(c)?,
            aq.try_div(d)?,
            aq.try_div(e)?,
            aq.clone() * q.powi(n as i64)?,
        ],
        q.clone(),
        z,
        n,
    )
    .very_well_poised(a.clone()))?;
    let de = d.clone() * e.clone();
    let den = qpoch_multi(&[aq.try_div(d)?, aq.try_div(e)?], q, n);
    ensure_nonzero(&den, "(a q/d, a q/e; q)_n", n as i64)?;
    let prefactor = qpoch_multi(&[aq.clone(), aq.try_div(&de)?], q, n).try_div(&den)?;
    let series = phi(&PhiSpec::new(
        vec![aq.try_div(&(b.clone() * c.clone()))?, d.clone(), e.clone(), qn.clone()],
        vec![aq.try_div(b)?, aq.try_div(c)?, (de * qn).try_div(a)?],
        q.clone(),
        q.clone(),
        n,
    ))?;
    Ok(WatsonSides { lhs, prefactor, series })
}

/// Very-well-poised ₈φ₇ minus the prefactor times the balanced ₄φ₃.
pub fn watson_residual<F: Field>(a: &F, b: &F, c: &F, d: &F, e: &F, n: usize, q: &F) -> Result<F> {
    let s = watson_sides(a, b, c, d, e, n, q)?;
    Ok(s.lhs - s.prefactor * s.series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_rational;

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn base() -> Params<Rational> {
        Params::with_dependent_f(r("2/3"), r("5/7"), r("-3/4"), r("9/5"), r("11/3"), r("-13/6")).unwrap()
    }

    #[test]
    fn gap_is_zero_on_the_boundary() {
        let p = base();
        for pair in LimitPair::ALL {
            for t in ["100", "1000"] {
                assert!(limit_gap(pair, 0, 3, &p, &r(t)).unwrap().is_zero(), "{pair:?}");
                assert!(limit_gap(pair, 3, 0, &p, &r(t)).unwrap().is_zero(), "{pair:?}");
            }
        }
    }

    #[test]
    fn gap_shrinks() {
        let p = base();
        for pair in LimitPair::ALL {
            let g1 = limit_gap(pair, 2, 2, &p, &r("1000")).unwrap();
            let g2 = limit_gap(pair, 2, 2, &p, &r("1000000")).unwrap();
            assert!(g2 < g1, "{pair:?}: {g1} then {g2}");
        }
    }

    #[test]
    fn curves_respect_the_constraint() {
        let p = base();
        for pair in LimitPair::ALL {
            let pt = pair.instantiate(&p, &r("77")).unwrap();
            let prod = pt.b.clone() * pt.c.clone() * pt.d.clone() * pt.e.clone() * pt.f.clone();
            assert!(prod.is_one());
        }
    }

    #[test]
    fn watson_examples() {
        let (a, b, c, d, e, q) = (r("3/5"), r("7/2"), r("-2/9"), r("5/4"), r("11/7"), r("1/3"));
        assert!(watson_residual(&a, &b, &c, &d, &e, 0, &q).unwrap().is_zero());
        for n in 1..5 {
            assert!(watson_residual(&a, &b, &c, &d, &e, n, &q).unwrap().is_zero(), "n={n}");
        }
        let s = watson_sides(&a, &b, &c, &d, &e, 3, &q).unwrap();
        assert!(!(s.lhs - (s.prefactor + r("1")) * s.series).is_zero());
    }
}
