use crate::error::Result;
use crate::field::{one_minus, Field};
use crate::wilson::{sigma, Params};

/// Which reading of the factor inside `e10` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum E10Variant {
    /// `(1 - b)(1 - b)`, the form in which the constant was first written down.
    AsPrinted,
    /// `(1 - b)(1 - c)`, parallel to the `K` term of `c6` and `c7`.
    Corrected,
}

/// Structure constants of the Wilson rational algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct WilsonConstants<F: Field> {
    pub q: F,
    /// `c1..c7`.
    pub c: [F; 7],
    /// `d1..d3`.
    pub d: [F; 3],
    /// `e1..e10`.
    pub e: [F; 10],
    /// The two coefficients on the left of the VZ relation: `a/(bc)` and `q/a`.
    pub vz: [F; 2],
}

pub const WILSON_CONSTANT_NAMES: [&str; 20] = [
    "c1", "c2", "c3", "c4", "c5", "c6", "c7", "d1", "d2", "d3", "e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8", "e9",
    "e10",
];

impl<F: Field> WilsonConstants<F> {
    /// `(name, value)` for c1..c7, d1..d3, e1..e10.
    pub fn named(&self) -> Vec<(&'static str, &F)> {
        let values = self.c.iter().chain(self.d.iter()).chain(self.e.iter());
        WILSON_CONSTANT_NAMES.iter().copied().zip(values).collect()
    }

    pub fn get(&self, name: &str) -> Option<&F> {
        self.named().into_iter().find(|(n, _)| *n == name).map(|(_, v)| v)
    }
}

/// `[k]_q = (1 - q^k)/(1 - q)`.
pub fn q_number<F: Field>(k: i64, q: &F) -> Result<F> {
    one_minus(&q.powi(k)?).try_div(&one_minus(q))
}

pub fn wilson_constants<F: Field>(p: &Params<F>, variant: E10Variant) -> Result<WilsonConstants<F>> {
    let (q, a, b, c) = (p.q.clone(), p.a.clone(), p.b.clone(), p.c.clone());
    let one = F::one();
    let bc = b.clone() * c.clone();
    let q1 = one.clone() + q.clone();
    let q1_2 = q1.clone() * q1.clone();
    let q1_3 = q1_2.clone() * q1.clone();
    let qinv = q.inv()?;
    let one_qinv = one.clone() + qinv.clone();
    let one_q2 = one_minus(&(q.clone() * q.clone()));
    let one_q2_sq = one_q2.clone() * one_q2;
    let sig_b = sigma(&b, p)?;
    let sig_c = sigma(&c, p)?;
    let sig_bc = sigma(&bc, p)?;

    let c1 = -(a.try_div(&bc)? + q.try_div(&a)?);
    let c2 = -(q.clone() * sig_b.clone());
    let c3 = q1_2.try_div(&bc)? - c1.clone() * c1.clone();
    let c4 = (q.clone() * q1.clone()).try_div(&b)? * sig_c.clone() - c1.clone() * c2.clone();
    let c5 = (q.clone() + qinv.clone()) * q1_2.clone() * c.clone();
    let k = one_minus(&b) * one_minus(&c) - bc.clone() * sig_bc.clone();
    let c6 = (q1.clone() * q_number(3, &q)?).try_div(&b)? * (k.clone() - bc.clone() * one_qinv.clone() * c1.clone())
        - (c.clone() * one_q2_sq.clone()).try_div(&q)? * c1.clone();
    let c7 = -(q1_2.clone() * c.clone() * c1.clone() * c1.clone())
        - q_number(4, &q)?.try_div(&b)? * (k - bc.clone() * c1.clone() * one_qinv.clone()) * c1.clone()
        - q.clone() * q.clone() * sigma(&-(b.clone() * q.clone()), p)? * sigma(&-b.try_div(&q)?, p)?
        + q1_2.clone() * q.clone() * (one.clone() + c.try_div(&b)?) * sig_bc.clone()
        - (bc.inv()? + one.clone()) * q.clone() * q1_2.clone() * (one.clone() + c.try_div(&b)?)
        - one_q2_sq.try_div(&b)?;

    let d1 = c3.clone();
    let d2 = q1.try_div(&c)?;
    let d3 = q.clone() * sig_c.clone() * c1.clone() + q.clone() * d2.clone() * sig_b.clone();

    let e1 = -q1.try_div(&b)?;
    let e2 = c2.clone();
    let e3 = b.clone() * q1_2.clone();
    let e4 = q1_3.clone()
        - c1.clone()
            * q.clone()
            * ((b.clone() - one.clone()) * (c.clone() - one.clone()) - bc.clone() * sig_bc.clone());
    let e5 = bc.clone() * q1.clone() * d3.clone();
    let e6 = q_number(3, &q)?.try_div(&q)? * e1.clone();
    let e7 = c2.clone();
    let one_q = one_minus(&q);
    let e8 = e4.clone() + (q1_3 * one_q.clone() * one_q).try_div(&q)?;
    let e9 = c7.clone() + (c.clone() * one_q2_sq.clone()).try_div(&q)? * c3.clone();
    let k2 = match variant {
        E10Variant::AsPrinted => one_minus(&b) * one_minus(&b),
        E10Variant::Corrected => one_minus(&b) * one_minus(&c),
    };
    let e10 = (q.clone() * q.clone()).try_div(&b)?
        * (q1 * sig_c + c1.clone() * b.clone() * sig_b)
        * (bc.clone() * sig_bc - k2 + bc * c1.clone() * one_qinv)
        + (one_q2_sq * c.clone()).try_div(&q)? * d3.clone();

    let vz = [a.try_div(&(b.clone() * c.clone()))?, q.try_div(&a)?];
    Ok(WilsonConstants {
        q,
        c: [c1, c2, c3, c4, c5, c6, c7],
        d: [d1, d2, d3],
        e: [e1, e2, e3, e4, e5, e6, e7, e8, e9, e10],
        vz,
    })
}

/// Structure constants of the meta q-Racah relations. `f[2]` (f3) is
/// defined alongside the others but enters none of the relations.
#[derive(Debug, Clone, PartialEq)]
pub struct MetaConstants<F: Field> {
    pub q: F,
    pub f: [F; 7],
}

pub const META_CONSTANT_NAMES: [&str; 7] = ["f1", "f2", "f3", "f4", "f5", "f6", "f7"];

/// Reads `q, a, b, d, e`; `c` and `f` have been sent to the limit.
pub fn meta_constants<F: Field>(p: &Params<F>) -> Result<MetaConstants<F>> {
    let (q, a, b, d, e) = (p.q.clone(), p.a.clone(), p.b.clone(), p.d.clone(), p.e.clone());
    let one = F::one();
    let q1 = one.clone() + q.clone();
    let bde = b.clone() * d.clone() * e.clone();
    let f1 = -(d.clone() * e.clone());
    let f2 = -q.try_div(&a)?;
    let f3 = one.clone() + b.clone() * q.clone() - a.clone() * q1.clone();
    let f4 = q1.clone() * a.clone();
    let f5 = a.clone() * d.clone() * e.clone() * q1.clone()
        - q.clone() * (bde.clone() + e.clone() + d.clone() + one.clone());
    let f6 = b.try_div(&a)? * q1.clone();
    let f7 = (q.clone() * b.clone() * q1).try_div(&(a.clone() * a.clone()))?
        - q.try_div(&a)? * (bde + e * b.clone() + b * d + one);
    Ok(MetaConstants {
        q,
        f: [f1, f2, f3, f4, f5, f6, f7],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_rational, Rational};

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn closed_form_spot_values() {
        let p = Params::with_dependent_f(r("1/2"), r("2"), r("3"), r("5"), r("7"), r("11")).unwrap();
        let k = wilson_constants(&p, E10Variant::Corrected).unwrap();
        assert_eq!(k.c[0], r("-23/60"));
        assert_eq!(k.d[0], k.c[2]);
        assert_eq!(k.e[1], k.c[1]);
        assert_eq!(k.e[6], k.c[1]);
        assert_eq!(k.get("c1"), Some(&r("-23/60")));
        let m = meta_constants(&p).unwrap();
        assert_eq!(m.f[0], r("-77"));
        assert_eq!(q_number(2, &r("1/2")).unwrap(), r("3/2"));
    }

    #[test]
    fn e10_variants_differ_only_when_b_differs_from_c() {
        let p = Params::with_dependent_f(r("1/2"), r("2"), r("3"), r("5"), r("7"), r("11")).unwrap();
        let a = wilson_constants(&p, E10Variant::AsPrinted).unwrap();
        let b = wilson_constants(&p, E10Variant::Corrected).unwrap();
        assert_ne!(a.e[9], b.e[9]);
        assert_eq!(a.e[..9], b.e[..9]);
        let p = Params::with_dependent_f(r("1/2"), r("2"), r("3"), r("3"), r("7"), r("11")).unwrap();
        let a = wilson_constants(&p, E10Variant::AsPrinted).unwrap();
        let b = wilson_constants(&p, E10Variant::Corrected).unwrap();
        assert_eq!(a.e[9], b.e[9]);
    }
}
