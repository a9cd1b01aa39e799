use super::coeffs::ensure_nonzero;
use super::Params;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::qseries::{phi, qpoch_multi, PhiSpec};

/// The function families. `W` is the ₁₀φ₉ Wilson function, `Wbar` and `P`
/// its renormalizations, `R` the q-Racah polynomial and the remaining tags
/// the ₄φ₃ limits of `W` and `Wbar`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    W,
    Wbar,
    P,
    R,
    R1,
    R1bar,
    R2,
    R2bar,
    R3,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 9] = [
        FamilyTag::W,
        FamilyTag::Wbar,
        FamilyTag::P,
        FamilyTag::R,
        FamilyTag::R1,
        FamilyTag::R1bar,
        FamilyTag::R2,
        FamilyTag::R2bar,
        FamilyTag::R3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::W => "W",
            FamilyTag::Wbar => "Wbar",
            FamilyTag::P => "P",
            FamilyTag::R => "R",
            FamilyTag::R1 => "R1",
            FamilyTag::R1bar => "R1bar",
            FamilyTag::R2 => "R2",
            FamilyTag::R2bar => "R2bar",
            FamilyTag::R3 => "R3",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        FamilyTag::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::InvalidInput(format!("unknown family {name:?}")))
    }
}

/// `(num; q)_n / (den; q)_n` with the vanishing denominator symbol named.
fn poch_ratio<F: Field>(num: &[F], den: &[(&str, F)], q: &F, n: usize) -> Result<F> {
    let mut d = F::one();
    for (name, b) in den {
        let v = qpoch_multi(std::slice::from_ref(b), q, n);
        ensure_nonzero(&v, &format!("({name}; q)_n"), n as i64)?;
        d = d * v;
    }
    qpoch_multi(num, q, n).try_div(&d)
}

fn w<F: Field>(n: usize, x: usize, p: &Params<F>) -> Result<F> {
    let (q, a, b, c, d, e, f) = (&p.q, &p.a, &p.b, &p.c, &p.d, &p.e, &p.f);
    let (ni, xi) = (n as i64, x as i64);
    let upper = vec![
        a.clone(),
        p.qp(-ni),
        b.clone() * p.qp(ni + 1),
        p.qp(-xi),
        c.clone() * p.qp(xi + 1),
        a.clone() * d.clone(),
        a.clone() * e.clone(),
        a.clone() * f.clone(),
    ];
    let lower = vec![
        (a.clone() * p.qp(-ni)).try_div(b)?,
        a.clone() * p.qp(ni + 1),
        (a.clone() * p.qp(-xi)).try_div(c)?,
        a.clone() * p.qp(xi + 1),
        q.try_div(d)?,
        q.try_div(e)?,
        q.try_div(f)?,
    ];
    phi(&PhiSpec::new(upper, lower, q.clone(), q.clone(), n.min(x)).very_well_poised(a.clone()))
}

/// `μ_n(x)`, the factor taking `W` to `Wbar`.
pub fn mu<F: Field>(n: usize, x: usize, p: &Params<F>) -> Result<F> {
    let (q, a, b, c) = (&p.q, &p.a, &p.b, &p.c);
    let xi = x as i64;
    let num = [
        a.clone() * p.qp(xi + 1),
        (a.clone() * p.qp(-xi)).try_div(c)?,
        (b.clone() * q.clone()).try_div(a)?,
        (b.clone() * c.clone() * p.qp(2)).try_div(a)?,
    ];
    let den = [
        ("b q^(1-x)/a", (b.clone() * p.qp(1 - xi)).try_div(a)?),
        ("b c q^(x+2)/a", (b.clone() * c.clone() * p.qp(xi + 2)).try_div(a)?),
        ("a/c", a.try_div(c)?),
        ("a q", a.clone() * q.clone()),
    ];
    poch_ratio(&num, &den, q, n)
}

/// `τ_k(x) = (q^{-x}, c q^{x+1}; q)_k / (a q^{-x}/c, a q^{x+1}; q)_k`.
pub fn tau<F: Field>(k: usize, x: usize, p: &Params<F>) -> Result<F> {
    let (q, a, c) = (&p.q, &p.a, &p.c);
    let xi = x as i64;
    let num = [p.qp(-xi), c.clone() * p.qp(xi + 1)];
    let den = [
        ("a q^(-x)/c", (a.clone() * p.qp(-xi)).try_div(c)?),
        ("a q^(x+1)", a.clone() * p.qp(xi + 1)),
    ];
    poch_ratio(&num, &den, q, k)
}

fn p_family<F: Field>(n: usize, x: usize, p: &Params<F>) -> Result<F> {
    let (q, a, c) = (&p.q, &p.a, &p.c);
    let (ni, xi) = (n as i64, x as i64);
    let pre = c.try_div(a)?.powi(ni)?
        * p.qp(-(ni * (ni - 1) / 2))
        * qpoch_multi(&[a.clone() * p.qp(xi + 1), (a.clone() * p.qp(-xi)).try_div(c)?], q, n);
    Ok(pre * w(n, x, p)?)
}

fn q_racah<F: Field>(n: usize, x: usize, p: &Params<F>) -> Result<F> {
    let (q, b, c, d, e, f) = (&p.q, &p.b, &p.c, &p.d, &p.e, &p.f);
    let (ni, xi) = (n as i64, x as i64);
    let upper = vec![p.qp(-ni), b.clone() * p.qp(ni + 1), p.qp(-xi), c.clone() * p.qp(xi + 1)];
    let lower = vec![q.try_div(d)?, q.try_div(e)?, q.try_div(f)?];
    phi(&PhiSpec::new(upper, lower, q.clone(), q.clone(), n.min(x)))
}

/// The ₄φ₃ shared by the c → ∞ limits.
fn r1_series<F: Field>(n: usize, x: usize, p: &Params<F>) -> Result<F> {
    let (q, a, b, d, e) = (&p.q, &p.a, &p.b, &p.d, &p.e);
    let (ni, xi) = (n as i64, x as i64);
    let upper = vec![
        p.qp(-ni),
        b.clone() * p.qp(ni + 1),
        p.qp(-xi),
        q.try_div(&(a.clone() * d.clone() * e.clone()))?,
    ];
    let lower = vec![q.try_div(d)?, q.try_div(e)?, (b.clone() * p.qp(1 - xi)).try_div(a)?];
    phi(&PhiSpec::new(upper, lower, q.clone(), q.clone(), n.min(x)))
}

fn r1<F: Field>(n: usize, x: usize, p: &Params<F>) -> Result<F> {
    let (q, a, b) = (&p.q, &p.a, &p.b);
    let (ni, xi) = (n as i64, x as i64);
    let num = [a.clone() * q.clone(), (a.clone() * p.qp(xi - ni)).try_div(b)?];
    let den = [
        ("a q^(x+1)", a.clone() * p.qp(xi + 1)),
        ("a q^(-n)/b", (a.clone() * p.qp(-ni)).try_div(b)?),
    ];
    Ok(poch_ratio(&num, &den, q, n)? * r1_series(n, x, p)?)
}

/// The ₄φ₃ shared by the b = 1/(c d e f), c → ∞ limits.
fn r2_series<F: Field>(n: usize, x: usize, p: &Params<F>) -> Result<F> {
    let (q, a, d, e, f) = (&p.q, &p.a, &p.d, &p.e, &p.f);
    let (ni, xi) = (n as i64, x as i64);
    let upper = vec![
        p.qp(-ni),
        p.qp(-xi),
        a.clone() * e.clone(),
        q.try_div(&(a.clone() * d.clone() * f.clone()))?,
    ];
    let lower = vec![q.try_div(d)?, q.try_div(f)?, e.clone() * p.qp(-xi - ni)];
    phi(&PhiSpec::new(upper, lower, q.clone(), q.clone(), n.min(x)))
}

fn r2<F: Field>(n: usize, x: usize, p: &Params<F>) -> Result<F> {
    let (q, a, e) = (&p.q, &p.a, &p.e);
    let xi = x as i64;
    let num = [a.clone() * q.clone(), p.qp(xi + 1).try_div(e)?];
    let den = [("a q^(x+1)", a.clone() * p.qp(xi + 1)), ("q/e", q.try_div(e)?)];
    Ok(poch_ratio(&num, &den, q, n)? * r2_series(n, x, p)?)
}

fn r2bar<F: Field>(n: usize, x: usize, p: &Params<F>) -> Result<F> {
    let (q, a, d, e, f) = (&p.q, &p.a, &p.d, &p.e, &p.f);
    let xi = x as i64;
    let adef = a.clone() * d.clone() * e.clone() * f.clone();
    let num = [p.qp(2).try_div(&adef)?, p.qp(xi + 1).try_div(e)?];
    let den = [
        ("q^(x+2)/(a d e f)", p.qp(xi + 2).try_div(&adef)?),
        ("q/e", q.try_div(e)?),
    ];
    Ok(poch_ratio(&num, &den, q, n)? * r2_series(n, x, p)?)
}

fn r3<F: Field>(n: usize, x: usize, p: &Params<F>) -> Result<F> {
    let (q, a, b, c, d) = (&p.q, &p.a, &p.b, &p.c, &p.d);
    let (ni, xi) = (n as i64, x as i64);
    let num = [a.clone() * q.clone(), p.qp(-ni).try_div(&(b.clone() * d.clone()))?];
    let den = [
        ("a q^(-n)/b", (a.clone() * p.qp(-ni)).try_div(b)?),
        ("q/d", q.try_div(d)?),
    ];
    let upper = vec![
        p.qp(-ni),
        b.clone() * p.qp(ni + 1),
        a.try_div(c)?,
        a.clone() * d.clone(),
    ];
    let lower = vec![
        a.clone() * p.qp(xi + 1),
        (a.clone() * p.qp(-xi)).try_div(c)?,
        b.clone() * d.clone() * q.clone(),
    ];
    let series = phi(&PhiSpec::new(upper, lower, q.clone(), q.clone(), n))?;
    Ok(poch_ratio(&num, &den, q, n)? * series)
}

/// Value of a family at `(n, x)`.
///
/// The limit families read only their surviving parameters: `R` ignores
/// `a`, `R1`/`R1bar` ignore `c` and `f`, `R2`/`R2bar` ignore `b` and `c`,
/// and `R3` ignores `e` and `f`.
pub fn eval_family<F: Field>(fam: FamilyTag, n: usize, x: usize, p: &Params<F>) -> Result<F> {
    match fam {
        FamilyTag::W => w(n, x, p),
        FamilyTag::Wbar => Ok(mu(n, x, p)? * w(n, x, p)?),
        FamilyTag::P => p_family(n, x, p),
        FamilyTag::R => q_racah(n, x, p),
        FamilyTag::R1 => r1(n, x, p),
        FamilyTag::R1bar => r1_series(n, x, p),
        FamilyTag::R2 => r2(n, x, p),
        FamilyTag::R2bar => r2bar(n, x, p),
        FamilyTag::R3 => r3(n, x, p),
    }
}
