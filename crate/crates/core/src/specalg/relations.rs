use super::band::BandMatrix;
use super::build::Triplet;
use super::constants::{MetaConstants, WilsonConstants};
use crate::error::{Error, Result};
use crate::field::{one_minus, Field};

/// `[A, B]_q = (A B - q B A) / (1 - q)`.
pub fn q_comm<F: Field>(a: &BandMatrix<F>, b: &BandMatrix<F>, q: &F) -> Result<BandMatrix<F>> {
    let ab = a.mul(b)?;
    let ba = b.mul(a)?;
    let s = one_minus(q).inv()?;
    Ok(ab.sub(&ba.scale(q))?.scale(&s))
}

/// `{A, B} = A B + B A`.
pub fn anticomm<F: Field>(a: &BandMatrix<F>, b: &BandMatrix<F>) -> Result<BandMatrix<F>> {
    a.mul(b)?.add(&b.mul(a)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    XZ1,
    XZ2,
    VZ,
    XV1,
    XV2,
    Meta1,
    Meta2,
    Meta3,
    MetaBar1,
    MetaBar2,
    MetaBar3,
}

impl Relation {
    pub const WILSON: [Relation; 5] = [Relation::XZ1, Relation::XZ2, Relation::VZ, Relation::XV1, Relation::XV2];
    pub const META: [Relation; 3] = [Relation::Meta1, Relation::Meta2, Relation::Meta3];
    pub const META_BAR: [Relation; 3] = [Relation::MetaBar1, Relation::MetaBar2, Relation::MetaBar3];

    pub fn name(self) -> &'static str {
        match self {
            Relation::XZ1 => "XZ_1",
            Relation::XZ2 => "XZ_2",
            Relation::VZ => "VZ",
            Relation::XV1 => "XV_1",
            Relation::XV2 => "XV_2",
            Relation::Meta1 => "META_1",
            Relation::Meta2 => "META_2",
            Relation::Meta3 => "META_3",
            Relation::MetaBar1 => "META_BAR_1",
            Relation::MetaBar2 => "META_BAR_2",
            Relation::MetaBar3 => "META_BAR_3",
        }
    }

    /// Length of the longest word, used as the interior margin in generic mode.
    pub fn word_length(self) -> usize {
        match self {
            Relation::XZ1 | Relation::XZ2 | Relation::XV1 | Relation::XV2 => 3,
            _ => 2,
        }
    }

    pub fn is_meta(self) -> bool {
        !Relation::WILSON.contains(&self)
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Constants<'a, F: Field> {
    Wilson(&'a WilsonConstants<F>),
    Meta(&'a MetaConstants<F>),
}

/// A word in the generators, with the constant that multiplies it on the
/// right-hand side of a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Word {
    X,
    Z,
    V,
    I,
    XX,
    ZZ,
    VV,
    /// `{X, Z}`.
    AntiXZ,
    /// `{V, X}`.
    AntiVX,
    ZZZ,
    VVV,
    VXV,
}

impl Word {
    pub fn eval<F: Field>(self, m: &Triplet<F>) -> Result<BandMatrix<F>> {
        let (x, z, v) = (&m.x, &m.z, &m.v);
        match self {
            Word::X => Ok(x.clone()),
            Word::Z => Ok(z.clone()),
            Word::V => Ok(v.clone()),
            Word::I => Ok(BandMatrix::identity(x.size())),
            Word::XX => x.mul(x),
            Word::ZZ => z.mul(z),
            Word::VV => v.mul(v),
            Word::AntiXZ => anticomm(x, z),
            Word::AntiVX => anticomm(v, x),
            Word::ZZZ => z.mul(z)?.mul(z),
            Word::VVV => v.mul(v)?.mul(v),
            Word::VXV => v.mul(x)?.mul(v),
        }
    }
}

/// The right-hand side of a Wilson relation as `(constant name, word)`.
pub fn wilson_rhs(rel: Relation) -> &'static [(&'static str, Word)] {
    match rel {
        Relation::XZ1 => &[("c1", Word::AntiXZ), ("c2", Word::ZZ), ("c3", Word::X), ("c4", Word::Z)],
        Relation::XZ2 => &[
            ("c1", Word::XX),
            ("c2", Word::AntiXZ),
            ("c4", Word::X),
            ("c5", Word::ZZZ),
            ("c6", Word::ZZ),
            ("c7", Word::Z),
        ],
        Relation::VZ => &[("d1", Word::V), ("d2", Word::X), ("d3", Word::I)],
        Relation::XV1 => &[
            ("e1", Word::VVV),
            ("e2", Word::VV),
            ("e3", Word::X),
            ("e4", Word::V),
            ("e5", Word::I),
        ],
        Relation::XV2 => &[
            ("e6", Word::VXV),
            ("e7", Word::AntiVX),
            ("e8", Word::X),
            ("e9", Word::V),
            ("e10", Word::I),
        ],
        _ => &[],
    }
}

/// The left-hand side of a Wilson relation.
pub fn wilson_lhs<F: Field>(rel: Relation, m: &Triplet<F>, k: &WilsonConstants<F>) -> Result<BandMatrix<F>> {
    let (x, z, v, q) = (&m.x, &m.z, &m.v, &k.q);
    match rel {
        Relation::XZ1 => q_comm(z, &q_comm(x, z, q)?, q),
        Relation::XZ2 => q_comm(x, &q_comm(z, x, q)?, q),
        Relation::VZ => q_comm(v, z, q)?.scale(&k.vz[0]).add(&q_comm(z, v, q)?.scale(&k.vz[1])),
        Relation::XV1 => q_comm(v, &q_comm(x, v, q)?, q),
        Relation::XV2 => q_comm(x, &q_comm(v, x, q)?, q),
        _ => Err(Error::InvalidInput(format!("{} is not a Wilson relation", rel.name()))),
    }
}

fn meta_residual<F: Field>(rel: Relation, m: &Triplet<F>, k: &MetaConstants<F>) -> Result<BandMatrix<F>> {
    let (x, z, v, q) = (&m.x, &m.z, &m.v, &k.q);
    let f = &k.f;
    let id = BandMatrix::identity(x.size());
    let (lhs, rhs) = match rel {
        Relation::Meta1 => (q_comm(x, z, q)?, vec![(&f[0], z), (&f[1], x)]),
        Relation::Meta2 => (q_comm(z, v, q)?, vec![(&f[1], v), (&f[3], x), (&f[4], &id)]),
        Relation::Meta3 => (q_comm(v, x, q)?, vec![(&f[0], v), (&f[5], z), (&f[6], &id)]),
        Relation::MetaBar1 => (q_comm(z, x, q)?, vec![(&f[0], z), (&f[1], x)]),
        Relation::MetaBar2 => (q_comm(v, z, q)?, vec![(&f[1], v), (&f[3], x), (&f[4], &id)]),
        Relation::MetaBar3 => (q_comm(x, v, q)?, vec![(&f[0], v), (&f[5], z), (&f[6], &id)]),
        _ => return Err(Error::InvalidInput(format!("{} is not a meta relation", rel.name()))),
    };
    rhs.into_iter().try_fold(lhs, |acc, (c, w)| acc.sub(&w.scale(c)))
}

/// Left side minus right side of `rel` evaluated on the generators `m`.
pub fn relation_residual<F: Field>(rel: Relation, m: &Triplet<F>, k: Constants<'_, F>) -> Result<BandMatrix<F>> {
    match k {
        Constants::Wilson(k) => {
            let mut acc = wilson_lhs(rel, m, k)?;
            for (name, word) in wilson_rhs(rel) {
                let c = k.get(name).expect("constant name is known");
                acc = acc.sub(&word.eval(m)?.scale(c))?;
            }
            Ok(acc)
        }
        Constants::Meta(k) => meta_residual(rel, m, k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_rational, Rational};
    use crate::specalg::band::is_zero_on_interior;
    use crate::specalg::build::{build_triplet, TripletSpec};
    use crate::specalg::constants::{wilson_constants, E10Variant};
    use crate::wilson::Params;

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn tri(size: usize, seed: i64) -> BandMatrix<Rational> {
        BandMatrix::from_fn(size, 1, 1, |i, j| {
            Ok(Rational::from_int(seed * (i as i64 + 1) - 2 * j as i64 + 3))
        })
        .unwrap()
    }

    #[test]
    fn commutator_examples() {
        let q = r("1/3");
        let a = tri(5, 2);
        let b = tri(5, -7);
        assert_eq!(q_comm(&a, &a, &q).unwrap(), a.mul(&a).unwrap());
        assert_eq!(q_comm(&BandMatrix::identity(5), &b, &q).unwrap(), b);
        assert_eq!(anticomm(&a, &b).unwrap(), anticomm(&b, &a).unwrap());
        assert!(q_comm(&a, &tri(4, 1), &q).is_err());
    }

    #[test]
    fn closure_mode_relations_vanish() {
        let q = r("1/2");
        let n = 6usize;
        let f = q.powi(n as i64 + 1).unwrap();
        let (b, c, d) = (r("3/5"), r("-7/4"), r("9/2"));
        let e = (b.clone() * c.clone() * d.clone() * f.clone()).inv().unwrap();
        let p = Params::new(q, r("5/3"), b, c, d, e, f).unwrap();
        let k = wilson_constants(&p, E10Variant::Corrected).unwrap();
        for barred in [false, true] {
            let m = build_triplet(n + 1, &p, &TripletSpec::standard(barred), false).unwrap();
            for rel in Relation::WILSON {
                let res = relation_residual(rel, &m, Constants::Wilson(&k)).unwrap();
                assert!(res.is_zero(), "{} barred={barred}", rel.name());
            }
        }
    }

    #[test]
    fn generic_mode_and_perturbation() {
        let p = Params::with_dependent_f(r("2/3"), r("5/7"), r("-3/4"), r("9/5"), r("11/3"), r("-13/6")).unwrap();
        let mut k = wilson_constants(&p, E10Variant::Corrected).unwrap();
        let m = build_triplet(9, &p, &TripletSpec::standard(false), false).unwrap();
        for rel in Relation::WILSON {
            let res = relation_residual(rel, &m, Constants::Wilson(&k)).unwrap();
            assert!(is_zero_on_interior(&res, 3).0, "{}", rel.name());
        }
        k.c[1] = k.c[1].clone() + r("1");
        let res = relation_residual(Relation::XZ1, &m, Constants::Wilson(&k)).unwrap();
        assert!(!is_zero_on_interior(&res, 3).0);
    }
}
