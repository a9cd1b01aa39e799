//! q-Pochhammer symbols and terminating basic hypergeometric series.

use crate::error::{Error, Result};
use crate::field::{one_minus, Field};

/// `(b;q)_k`.
pub fn qpoch<F: Field>(b: &F, q: &F, k: usize) -> F {
    let mut acc = F::one();
    let mut bq = b.clone();
    for j in 0..k {
        acc = acc * one_minus(&bq);
        if j + 1 < k {
            bq = bq * q.clone();
        }
    }
    acc
}

/// `(b_1, ..., b_r; q)_k`.
pub fn qpoch_multi<F: Field>(bs: &[F], q: &F, k: usize) -> F {
    bs.iter().fold(F::one(), |acc, b| acc * qpoch(b, q, k))
}

/// A terminating series `Σ_{k=0}^{nterms} [(upper)_k / ((lower)_k (q;q)_k)] z^k`.
///
/// `(q;q)_k` is implicit and must not be listed in `lower`. When `vwp` is
/// `Some(a)` every term is also multiplied by `(1 - a q^{2k}) / (1 - a)`,
/// which is the contribution of the pair `q√a, -q√a` over `√a, -√a`.
#[derive(Debug, Clone)]
pub struct PhiSpec<F: Field> {
    pub upper: Vec<F>,
    pub lower: Vec<F>,
    pub q: F,
    pub z: F,
    pub nterms: usize,
    pub vwp: Option<F>,
}

impl<F: Field> PhiSpec<F> {
    pub fn new(upper: Vec<F>, lower: Vec<F>, q: F, z: F, nterms: usize) -> Self {
        PhiSpec {
            upper,
            lower,
            q,
            z,
            nterms,
            vwp: None,
        }
    }

    pub fn very_well_poised(mut self, a: F) -> Self {
        self.vwp = Some(a);
        self
    }
}

/// Sums the series by running term ratios.
///
/// Summation stops at the first vanishing upper factor. A vanishing lower
/// factor before that point is `ZeroDenominatorTerm`; `parameter` indexes
/// `lower`, with `lower.len()` standing for the implicit `(q;q)_k`.
pub fn phi<F: Field>(spec: &PhiSpec<F>) -> Result<F> {
    let q = &spec.q;
    let vwp_den = match &spec.vwp {
        Some(a) => {
            let den = one_minus(a);
            if den.is_zero() {
                return Err(Error::degenerate("1 - a", 0));
            }
            Some((a.clone(), den))
        }
        None => None,
    };
    let mut up: Vec<F> = spec.upper.clone();
    let mut lo: Vec<F> = spec.lower.clone();
    let mut qk = F::one();
    let mut q2k = F::one();
    let q2 = q.clone() * q.clone();
    let mut term = F::one();
    let mut sum = F::one();
    for k in 1..=spec.nterms {
        let num = up.iter().fold(F::one(), |acc, u| acc * one_minus(u));
        if num.is_zero() {
            break;
        }
        qk = qk * q.clone();
        let mut den = F::one();
        for (j, l) in lo.iter().enumerate() {
            let factor = one_minus(l);
            if factor.is_zero() {
                return Err(Error::ZeroDenominatorTerm { k, parameter: j });
            }
            den = den * factor;
        }
        let qfac = one_minus(&qk);
        if qfac.is_zero() {
            return Err(Error::ZeroDenominatorTerm { k, parameter: lo.len() });
        }
        den = den * qfac;
        term = term * num * spec.z.clone();
        term = term.try_div(&den)?;
        sum = match &vwp_den {
            Some((a, d)) => {
                q2k = q2k * q2.clone();
                let w = one_minus(&(a.clone() * q2k.clone())).try_div(d)?;
                sum + term.clone() * w
            }
            None => sum + term.clone(),
        };
        for u in up.iter_mut() {
            *u = u.clone() * q.clone();
        }
        for l in lo.iter_mut() {
            *l = l.clone() * q.clone();
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_rational, Rational};

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(qpoch(&r("7/3"), &r("1/2"), 0), r("1"));
        assert_eq!(qpoch(&r("1"), &r("1/2"), 3), r("0"));
        assert_eq!(qpoch(&r("1/2"), &r("1/2"), 2), r("3/8"));
        assert_eq!(qpoch_multi::<Rational>(&[], &r("1/2"), 4), r("1"));
        assert_eq!(qpoch_multi(&[r("1/2"), r("1/3")], &r("1/2"), 1), r("1/3"));
        assert_eq!(qpoch_multi(&[r("2"), r("1")], &r("1/5"), 2), r("0"));
    }

    #[test]
    fn two_term_sum() {
        let q = r("1/2");
        let spec = PhiSpec::new(vec![r("2"), r("1/2")], vec![r("1/3")], q.clone(), q, 1);
        assert_eq!(phi(&spec).unwrap(), r("1/4"));
    }

    #[test]
    fn unit_upper_parameter_and_empty_sum() {
        let q = r("1/3");
        let spec = PhiSpec::new(vec![r("1"), r("5")], vec![r("7")], q.clone(), r("2"), 5);
        assert_eq!(phi(&spec).unwrap(), r("1"));
        let spec = PhiSpec::new(vec![r("4"), r("5")], vec![r("7")], q.clone(), r("2"), 0);
        assert_eq!(phi(&spec).unwrap(), r("1"));
    }

    #[test]
    fn zero_denominator_is_reported() {
        let q = r("1/2");
        // lower 4 = q^{-2} vanishes at k = 3, upper q^{-3} is still alive
        let spec = PhiSpec::new(vec![r("8")], vec![r("3"), r("4")], q.clone(), q.clone(), 3);
        assert_eq!(phi(&spec), Err(Error::ZeroDenominatorTerm { k: 3, parameter: 1 }));
        // same lower factor, but the upper q^{-2} terminates first
        let spec = PhiSpec::new(vec![r("4")], vec![r("3"), r("4")], q.clone(), q, 5);
        assert!(phi(&spec).is_ok());
    }

    #[test]
    fn very_well_poised_factor() {
        let q = r("1/2");
        let a = r("3");
        let spec =
            PhiSpec::new(vec![a.clone(), r("4")], vec![r("3/8")], q.clone(), q.clone(), 1).very_well_poised(a.clone());
        // 1 + (1 - a q^2)/(1 - a) * (1-a)(1-4)/((1-3/8)(1-q)) * q
        let expected = r("1")
            + (r("1") - a.clone() * r("1/4")) / (r("1") - a.clone()) * (r("1") - a.clone()) * r("-3")
                / (r("5/8") * r("1/2"))
                * r("1/2");
        assert_eq!(phi(&spec).unwrap(), expected);
        let bad = PhiSpec::new(vec![r("4")], vec![], q.clone(), q, 1).very_well_poised(r("1"));
        assert!(matches!(phi(&bad), Err(Error::DegenerateParameter { .. })));
    }
}
