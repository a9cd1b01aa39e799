use num_bigint::BigInt;
use proptest::prelude::*;

use wilson_core::field::{parse_rational, ratfun_eval, Field, RatFun, Rational};
use wilson_core::harness::{sample_params, Mode, SampleSpec};
use wilson_core::wilson::{
    eval_family, limit_gap, mu, p_degree_profile, watson_residual, watson_sides, Evaluator, FamilyTag, Identity,
    LimitPair, Params,
};
use wilson_core::Error;

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn param() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=20)
        .prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
        .prop_filter("avoid 0, 1, -1", |v| {
            !v.is_zero() && !v.is_one() && !(-v.clone()).is_one()
        })
}

fn generic(seed: u64, index: u64) -> Params<Rational> {
    sample_params(
        seed,
        index,
        SampleSpec {
            mode: Mode::Generic,
            n: 5,
        },
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn identities_vanish_at_sampled_points(seed in 0u64..10_000) {
        let ev = Evaluator::new(generic(seed, 0));
        for id in Identity::ALL {
            for n in 0..=3 {
                for x in 0..=3 {
                    let v = ev.residual(id, n, x).unwrap();
                    prop_assert!(v.is_zero(), "{} at n={} x={}: {}", id.name(), n, x, v);
                }
            }
        }
    }

    // With a d = 1 the series collapses to W = 1 and the unbarred checks go
    // blind, so look across every identity.
    #[test]
    fn a_perturbed_coefficient_never_goes_unnoticed(seed in 0u64..10_000) {
        let ev = Evaluator::new(generic(seed, 1)).with_fault(true);
        let hit = Identity::ALL.iter().any(|&id| {
            (1..=3).any(|n| (1..=3).any(|x| !ev.residual(id, n, x).unwrap().is_zero()))
        });
        prop_assert!(hit);
    }

    #[test]
    fn unit_product_ad_collapses_w(seed in 0u64..10_000) {
        let g = generic(seed, 3);
        let Ok(p) = Params::with_dependent_f(g.q, g.a.clone(), g.b, g.c, g.a.inv().unwrap(), g.e) else {
            return Ok(());
        };
        for n in 0..=3 {
            for x in 0..=3 {
                if let Ok(w) = eval_family(FamilyTag::W, n, x, &p) {
                    prop_assert!(w.is_one(), "W_{}({}) = {}", n, x, w);
                }
            }
        }
    }

    /// Evaluating over Q(t) and then setting t = t0 agrees with evaluating
    /// at the specialized point.
    #[test]
    fn specialization_commutes(seed in 0u64..10_000, t0 in param(), n in 0usize..=2, x in 0usize..=2) {
        let base = generic(seed, 2);
        let lift = |v: &Rational| RatFun::constant(v.clone());
        let pt = Params::with_dependent_f(
            lift(&base.q), RatFun::t(), lift(&base.b), lift(&base.c), lift(&base.d), lift(&base.e),
        ).unwrap();
        let Ok(special) = pt.try_map(|v| ratfun_eval(v, &t0)) else { return Ok(()); };
        for fam in [FamilyTag::W, FamilyTag::Wbar, FamilyTag::R] {
            let over_qt = eval_family(fam, n, x, &pt).unwrap();
            let (Ok(at_point), Ok(lowered)) = (eval_family(fam, n, x, &special), ratfun_eval(&over_qt, &t0)) else {
                continue;
            };
            prop_assert_eq!(at_point, lowered);
        }
    }

    #[test]
    fn watson_holds(a in param(), b in param(), c in param(), d in param(), e in param(), base in param(), n in 0usize..=6) {
        match watson_residual(&a, &b, &c, &d, &e, n, &base) {
            Ok(v) => prop_assert!(v.is_zero(), "residual {}", v),
            Err(Error::DegenerateParameter { .. }) | Err(Error::ZeroDenominatorTerm { .. }) | Err(Error::DivisionByZero) => {}
            Err(other) => prop_assert!(false, "unexpected error {}", other),
        }
    }
}

#[test]
fn wbar_is_mu_times_w_and_symmetric() {
    let p = generic(3, 0);
    let swapped = p.swap_bc();
    for n in 0..=4 {
        for x in 0..=4 {
            let w = eval_family(FamilyTag::W, n, x, &p).unwrap();
            let wbar = eval_family(FamilyTag::Wbar, n, x, &p).unwrap();
            assert_eq!(wbar, mu(n, x, &p).unwrap() * w.clone());
            assert_eq!(w, eval_family(FamilyTag::W, x, n, &swapped).unwrap());
        }
        assert!(eval_family(FamilyTag::Wbar, n, 0, &p).unwrap().is_one());
        assert!(eval_family(FamilyTag::Wbar, 0, n, &p).unwrap().is_one());
    }
}

#[test]
fn degree_profile_matches_index() {
    let p = generic(11, 0);
    for n in 0..=5 {
        let nodes: Vec<usize> = (0..n + 2).collect();
        let (deg, lead) = p_degree_profile(n, &p, &nodes).unwrap();
        assert_eq!(deg, n);
        assert!(!lead.is_zero());
    }
}

#[test]
fn limit_gaps_vanish_on_the_boundary_and_shrink() {
    let p = generic(5, 0);
    let grid = [q("100"), q("1000"), q("10000")];
    for pair in LimitPair::ALL {
        for t in &grid {
            assert!(limit_gap(pair, 0, 2, &p, t).unwrap().is_zero());
            assert!(limit_gap(pair, 2, 0, &p, t).unwrap().is_zero());
        }
    }
    let gaps: Vec<Rational> = grid
        .iter()
        .map(|t| limit_gap(LimitPair::R3, 1, 1, &p, t).unwrap())
        .collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
}

#[test]
fn watson_sides_reassemble() {
    let (a, b, c, d, e, base) = (q("3/7"), q("5/2"), q("-2/9"), q("7/4"), q("11/3"), q("1/3"));
    let s = watson_sides(&a, &b, &c, &d, &e, 3, &base).unwrap();
    assert_eq!(s.lhs, s.prefactor * s.series);
    assert!(watson_residual(&a, &b, &c, &d, &e, 0, &base).unwrap().is_zero());
}
