use num_bigint::BigInt;
use proptest::prelude::*;

use wilson_core::field::{Field, Rational};
use wilson_core::qseries::{phi, qpoch, qpoch_multi, PhiSpec};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn param() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=30)
        .prop_map(|(n, d)| r(n, d))
        .prop_filter("not 0 or 1", |v| !v.is_zero() && !v.is_one())
}

fn base() -> impl Strategy<Value = Rational> {
    param().prop_filter("q avoids -1", |q| !(-q.clone()).is_one())
}

fn q_pow(q: &Rational, k: i64) -> Rational {
    q.powi(k).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pochhammer_splits(b in param(), q in base(), m in 0usize..5, n in 0usize..5) {
        let whole = qpoch(&b, &q, m + n);
        let split = qpoch(&b, &q, m) * qpoch(&(b.clone() * q_pow(&q, m as i64)), &q, n);
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn multi_pochhammer_is_a_product(b1 in param(), b2 in param(), q in base(), k in 0usize..6) {
        prop_assert_eq!(
            qpoch_multi(&[b1.clone(), b2.clone()], &q, k),
            qpoch(&b1, &q, k) * qpoch(&b2, &q, k)
        );
    }

    #[test]
    fn series_ignores_parameter_order(
        u in prop::collection::vec(param(), 3),
        l in prop::collection::vec(param(), 2),
        q in base(),
        z in param(),
        n in 1usize..5,
    ) {
        let mut upper = vec![q_pow(&q, -(n as i64))];
        upper.extend(u.iter().cloned());
        let spec = PhiSpec::new(upper.clone(), l.clone(), q.clone(), z.clone(), n);
        upper.reverse();
        let mut lower = l.clone();
        lower.reverse();
        let swapped = PhiSpec::new(upper, lower, q, z, n);
        match (phi(&spec), phi(&swapped)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
        }
    }

    /// q-Chu-Vandermonde: 2phi1(q^-n, b; c; q, c q^n / b) = (c/b;q)_n / (c;q)_n.
    #[test]
    fn chu_vandermonde(b in param(), c in param(), q in base(), n in 0usize..6) {
        let ni = n as i64;
        let cb = c.try_div(&b).unwrap();
        let den = qpoch(&c, &q, n);
        prop_assume!(!den.is_zero());
        let z = cb.clone() * q_pow(&q, ni);
        let spec = PhiSpec::new(vec![q_pow(&q, -ni), b.clone()], vec![c.clone()], q.clone(), z, n);
        let Ok(lhs) = phi(&spec) else { return Ok(()); };
        prop_assert_eq!(lhs, qpoch(&cb, &q, n).try_div(&den).unwrap());
    }

    /// q-Pfaff-Saalschutz for a balanced terminating 3phi2.
    #[test]
    fn pfaff_saalschutz(a in param(), b in param(), c in param(), q in base(), n in 0usize..5) {
        let ni = n as i64;
        let ab = a.clone() * b.clone();
        let d = ab.clone() * q_pow(&q, 1 - ni) / c.clone();
        let den = qpoch(&c, &q, n) * qpoch(&(c.clone() / ab.clone()), &q, n);
        prop_assume!(!den.is_zero());
        let spec = PhiSpec::new(
            vec![q_pow(&q, -ni), a.clone(), b.clone()],
            vec![c.clone(), d],
            q.clone(),
            q.clone(),
            n,
        );
        let Ok(lhs) = phi(&spec) else { return Ok(()); };
        let num = qpoch(&(c.clone() / a), &q, n) * qpoch(&(c.clone() / b), &q, n);
        prop_assert_eq!(lhs, num.try_div(&den).unwrap());
    }
}

#[test]
fn spot_values() {
    let half = r(1, 2);
    assert_eq!(qpoch(&half, &half, 2), r(3, 8));
    assert!(qpoch(&Rational::one(), &half, 3).is_zero());
    assert_eq!(qpoch(&r(7, 3), &half, 0), Rational::one());
    assert_eq!(qpoch_multi(&[half.clone(), r(1, 3)], &half, 1), r(1, 3));
    assert_eq!(qpoch_multi::<Rational>(&[], &half, 4), Rational::one());
    let spec = PhiSpec::new(
        vec![r(2, 1), half.clone()],
        vec![r(1, 3)],
        half.clone(),
        half.clone(),
        1,
    );
    assert_eq!(phi(&spec).unwrap(), r(1, 4));
}
