use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::Mode;
use crate::error::{Error, Result};
use crate::field::{one_minus, Field, Rational};
use crate::wilson::Params;

const MAX_HEIGHT: i64 = 20;
const MAX_ATTEMPTS: usize = 1000;

/// How a sample is drawn: the mode, and the truncation `N` that closure
/// mode uses and validation scans up to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleSpec {
    pub mode: Mode,
    pub n: usize,
}

/// A rational with numerator and denominator of magnitude at most 20,
/// avoiding 0 and ±1.
fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let num = rng.gen_range(-MAX_HEIGHT..=MAX_HEIGHT);
        let den = rng.gen_range(1..=MAX_HEIGHT);
        let v = Rational::new(num.into(), den.into());
        if !(v.is_zero() || v.is_one() || (-v.clone()).is_one()) {
            return v;
        }
    }
}

fn draw(rng: &mut ChaCha8Rng, spec: SampleSpec) -> Result<Params<Rational>> {
    let q = small_rational(rng);
    let a = small_rational(rng);
    let b = small_rational(rng);
    let c = small_rational(rng);
    let d = small_rational(rng);
    match spec.mode {
        Mode::Generic => {
            let e = small_rational(rng);
            Params::with_dependent_f(q, a, b, c, d, e)
        }
        Mode::Closure => {
            let f = q.powi(spec.n as i64 + 1)?;
            let e = (b.clone() * c.clone() * d.clone() * f.clone()).inv()?;
            Params::new(q, a, b, c, d, e, f)
        }
    }
}

/// Sample number `index` of the stream selected by `seed`. Draws are
/// repeated until [`validate_params`] passes.
pub fn sample_params(seed: u64, index: u64, spec: SampleSpec) -> Result<Params<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    for _ in 0..MAX_ATTEMPTS {
        if let Ok(p) = draw(&mut rng, spec) {
            if validate_params(&p, spec.n).is_empty() {
                return Ok(p);
            }
        }
    }
    Err(Error::SamplingExhausted(MAX_ATTEMPTS))
}

/// A vanishing denominator factor found by [`validate_params`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degeneracy {
    pub factor: String,
    pub index: i64,
}

struct Scan<'a> {
    p: &'a Params<Rational>,
    found: Vec<Degeneracy>,
}

impl Scan<'_> {
    fn q(&self, k: i64) -> Rational {
        self.p.qp(k)
    }

    fn check(&mut self, factor: &str, index: i64, value: Rational) {
        if value.is_zero() {
            self.found.push(Degeneracy {
                factor: factor.to_string(),
                index,
            });
        }
    }

    /// `1 - u q^k` for `k` in `range`, the factors of `(u q^lo; q)_{hi-lo}`.
    fn poch(&mut self, name: &str, u: &Rational, range: std::ops::RangeInclusive<i64>) {
        for k in range {
            let v = one_minus(&(u.clone() * self.q(k)));
            self.check(name, k, v);
        }
    }
}

/// Every denominator factor used by the function, coefficient and limit
/// evaluations at `0 ≤ n, x ≤ N`, for both `(b, c)` and `(c, b)`. Returns
/// the factors that vanish; an empty list means the point is usable.
pub fn validate_params(p: &Params<Rational>, n_max: usize) -> Vec<Degeneracy> {
    let mut s = Scan { p, found: Vec::new() };
    let nm = n_max as i64;
    let (a, d, e, f) = (&p.a, &p.d, &p.e, &p.f);
    for (b, c, tag) in [(&p.b, &p.c, ""), (&p.c, &p.b, " [b<->c]")] {
        let bc = b.clone() * c.clone();
        for n in 0..=nm + 1 {
            let qn = s.q(n);
            s.check(&format!("1 - a q^(n+1){tag}"), n, one_minus(&(a.clone() * s.q(n + 1))));
            // at n = 0 both factors cancel against vanishing numerators
            if n > 0 {
                s.check(&format!("a - b q^n{tag}"), n, a.clone() - b.clone() * qn);
                s.check(&format!("1 - b q^(2n){tag}"), n, one_minus(&(b.clone() * s.q(2 * n))));
            }
            s.check(
                &format!("1 - b q^(2n+1){tag}"),
                n,
                one_minus(&(b.clone() * s.q(2 * n + 1))),
            );
            s.check(
                &format!("1 - b q^(2n+2){tag}"),
                n,
                one_minus(&(b.clone() * s.q(2 * n + 2))),
            );
            s.check(&format!("c - a q^(n-1){tag}"), n, c.clone() - a.clone() * s.q(n - 1));
            s.check(&format!("a - b c q^(n+2){tag}"), n, a.clone() - bc.clone() * s.q(n + 2));
        }
        let ab = a.try_div(b).expect("b is nonzero");
        let ac = a.try_div(c).expect("c is nonzero");
        let ba = b.try_div(a).expect("a is nonzero");
        s.poch(&format!("(a q^-n/b; q){tag}"), &ab, -nm..=nm);
        s.poch(&format!("(a q^-x/c; q){tag}"), &ac, -nm..=nm);
        s.poch(&format!("(b q^(1-x)/a; q){tag}"), &ba, 1 - nm..=nm + 1);
        s.poch(
            &format!("(b c q^(x+2)/a; q){tag}"),
            &(bc.clone() * a.inv().expect("a is nonzero")),
            2..=2 * nm + 2,
        );
        s.poch(&format!("(b d q; q){tag}"), &(b.clone() * d.clone()), 1..=nm + 1);
    }
    s.poch("(a q; q)", a, 1..=2 * nm + 2);
    for (name, u) in [("(q/d; q)", d), ("(q/e; q)", e), ("(q/f; q)", f)] {
        s.poch(name, &u.inv().expect("nonzero"), 1..=nm);
    }
    let ade = a.clone() * d.clone() * e.clone();
    let adef = ade.clone() * f.clone();
    s.poch("(q^(x+2)/(a d e f); q)", &adef.inv().expect("nonzero"), 2..=2 * nm + 2);
    s.poch("(e q^(-x-n); q)", e, -2 * nm..=-1);
    s.found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_rational;

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn samples_respect_mode() {
        for index in 0..10 {
            let g = sample_params(
                7,
                index,
                SampleSpec {
                    mode: Mode::Generic,
                    n: 8,
                },
            )
            .unwrap();
            let prod = g.b.clone() * g.c.clone() * g.d.clone() * g.e.clone() * g.f.clone();
            assert!(prod.is_one());
            let c = sample_params(
                7,
                index,
                SampleSpec {
                    mode: Mode::Closure,
                    n: 6,
                },
            )
            .unwrap();
            assert_eq!(c.f, c.q.powi(7).unwrap());
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let spec = SampleSpec {
            mode: Mode::Generic,
            n: 8,
        };
        assert_eq!(sample_params(3, 2, spec).unwrap(), sample_params(3, 2, spec).unwrap());
        assert_ne!(sample_params(3, 2, spec).unwrap(), sample_params(3, 3, spec).unwrap());
    }

    #[test]
    fn flags_constructed_degeneracy() {
        let q = r("1/2");
        let p = Params::with_dependent_f(q.clone(), q.powi(-2).unwrap(), r("3"), r("5"), r("7"), r("11")).unwrap();
        let found = validate_params(&p, 3);
        assert!(
            found.iter().any(|d| d.factor == "1 - a q^(n+1)" && d.index == 1),
            "{found:?}"
        );
    }

    #[test]
    fn equal_a_and_b_is_not_a_coefficient_pole() {
        let p = Params::with_dependent_f(r("2/3"), r("5/7"), r("5/7"), r("9/5"), r("11/3"), r("-13/6")).unwrap();
        let found = validate_params(&p, 4);
        assert!(!found.iter().any(|d| d.factor.starts_with("a - b q^n")), "{found:?}");
    }
}
