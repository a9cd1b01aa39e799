use super::band::BandMatrix;
use super::build::{
    build, build_triplet, BuildOptions, MatrixKind, Orientation, RhoVariant, Triplet, TripletSpec, VVariant,
};
use super::constants::{meta_constants, wilson_constants, E10Variant, WILSON_CONSTANT_NAMES};
use super::relations::{relation_residual, wilson_lhs, wilson_rhs, Constants, Relation};
use crate::error::{Error, Result};
use crate::field::{leading_at_infinity, Field, RatFun, Rational};
use crate::wilson::{eval_family, lambda, FamilyTag, LimitPair, Params};

/// Leading term at `t → ∞`: the largest entry degree `p` and the matrix of
/// coefficients of `t^p` (zero where an entry has lower degree).
pub fn leading_matrix(m: &BandMatrix<RatFun>) -> Result<(i64, BandMatrix<Rational>)> {
    let mut best: Option<i64> = None;
    for (_, _, v) in m.nonzeros() {
        let (d, _) = leading_at_infinity(v)?;
        best = Some(best.map_or(d, |b| b.max(d)));
    }
    let p = best.ok_or(Error::ZeroMatrix)?;
    let lead = m.try_map(|v| {
        if v.is_zero() {
            return Ok(Rational::zero());
        }
        let (d, c) = leading_at_infinity(v)?;
        Ok(if d == p { c } else { Rational::zero() })
    })?;
    Ok((p, lead))
}

/// Largest degree among nonzero entries with `max(i, j) < size - margin`.
pub fn interior_degree(m: &BandMatrix<RatFun>, margin: usize) -> Result<Option<i64>> {
    let limit = m.size().saturating_sub(margin);
    let mut best = None;
    for (i, j, v) in m.nonzeros() {
        if i.max(j) < limit {
            let d = leading_at_infinity(v)?.0;
            best = Some(best.map_or(d, |b: i64| b.max(d)));
        }
    }
    Ok(best)
}

fn lift(p: &Params<Rational>) -> Result<Params<RatFun>> {
    p.try_map(|v| Ok(RatFun::constant(v.clone())))
}

fn to_rational(m: &BandMatrix<RatFun>) -> Result<BandMatrix<Rational>> {
    m.try_map(|v| {
        v.as_constant()
            .ok_or_else(|| Error::InvalidInput(format!("entry {v} depends on t")))
    })
}

/// The point on `pair`'s limit curve with `t` left symbolic.
pub fn limit_curve(pair: LimitPair, base: &Params<Rational>) -> Result<Params<RatFun>> {
    pair.instantiate(&lift(base)?, &RatFun::t())
}

/// Normalization of the leading generators along `c = t → ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MetaSpec {
    /// ρ applied before taking the leading term of X.
    pub rho: RhoVariant,
    /// Multiply the leading Z by `q/(b d e)`.
    pub scale_z: bool,
    /// Divide the leading X by `q`.
    pub scale_x: bool,
}

impl MetaSpec {
    /// `𝒳 = lead(X̃)/q`, `𝒵 = lead(Z)`: the normalization under which the
    /// meta relations hold.
    pub fn standard() -> Self {
        MetaSpec {
            rho: RhoVariant::Shift,
            scale_z: false,
            scale_x: true,
        }
    }

    /// `𝒳 = lead(X̃)`, `𝒵 = (q/(b d e)) lead(Z)`.
    pub fn as_stated() -> Self {
        MetaSpec {
            rho: RhoVariant::Shift,
            scale_z: true,
            scale_x: false,
        }
    }

    pub fn name(self) -> String {
        format!(
            "rho={},z={},x={}",
            self.rho.name(),
            if self.scale_z { "q/(bde)" } else { "1" },
            if self.scale_x { "1/q" } else { "1" }
        )
    }
}

/// Leading generators `(𝒳, 𝒵, 𝒱)` or their barred analogues, with the
/// degrees `p` of X and Z.
#[derive(Debug, Clone)]
pub struct MetaGenerators {
    pub triplet: Triplet<Rational>,
    pub x_degree: i64,
    pub z_degree: i64,
}

struct MetaSetup {
    curve: Params<RatFun>,
    full: Triplet<RatFun>,
    x_scale: RatFun,
    z_scale: RatFun,
    x_degree: i64,
    z_degree: i64,
    lead: Triplet<Rational>,
}

fn meta_setup(base: &Params<Rational>, size: usize, barred: bool, spec: MetaSpec) -> Result<MetaSetup> {
    let curve = limit_curve(LimitPair::R1, base)?;
    let tspec = TripletSpec {
        barred,
        orientation: Orientation::EquationRow,
        rho: spec.rho,
        v_variant: VVariant::Shifted,
    };
    let full = build_triplet(size, &curve, &tspec, false)?;
    let (px, lx) = leading_matrix(&full.x)?;
    let (pz, lz) = leading_matrix(&full.z)?;
    let q = base.q.clone();
    let xs = if spec.scale_x { q.inv()? } else { Rational::one() };
    let zs = if spec.scale_z {
        q.try_div(&(base.b.clone() * base.d.clone() * base.e.clone()))?
    } else {
        Rational::one()
    };
    let t = RatFun::t();
    let lead = Triplet {
        x: lx.scale(&xs),
        z: lz.scale(&zs),
        v: to_rational(&full.v)?,
    };
    Ok(MetaSetup {
        x_scale: t.powi(-px)? * RatFun::constant(xs),
        z_scale: t.powi(-pz)? * RatFun::constant(zs),
        curve,
        full,
        x_degree: px,
        z_degree: pz,
        lead,
    })
}

/// Leading generators along `c = t`, `f = 1/(b t d e)`; `base` supplies
/// `q, a, b, d, e`.
pub fn meta_generators(base: &Params<Rational>, size: usize, barred: bool, spec: MetaSpec) -> Result<MetaGenerators> {
    let s = meta_setup(base, size, barred, spec)?;
    Ok(MetaGenerators {
        triplet: s.lead,
        x_degree: s.x_degree,
        z_degree: s.z_degree,
    })
}

/// Outcome of a meta relation check.
#[derive(Debug, Clone, PartialEq)]
pub struct MetaCheck {
    /// Residual of the relation on the leading generators, over Q.
    pub leading: BandMatrix<Rational>,
    /// First interior entry of the Q(t) residual whose degree is not
    /// negative, with its `t^0` coefficient (or leading coefficient when the
    /// degree is positive).
    pub witness: Option<((usize, usize), i64, Rational)>,
}

impl MetaCheck {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks the three meta relations (barred or not) end to end: the
/// rescaled Q(t) generators are combined in Q(t), and a relation holds iff
/// every interior entry of its residual vanishes as `t → ∞`. The residual
/// on the leading generators is returned alongside for comparison. `fault`
/// perturbs `f2` by one.
pub fn meta_checks(
    base: &Params<Rational>,
    size: usize,
    margin: usize,
    barred: bool,
    spec: MetaSpec,
    fault: bool,
) -> Result<Vec<(Relation, MetaCheck)>> {
    let s = meta_setup(base, size, barred, spec)?;
    let scaled = Triplet {
        x: s.full.x.scale(&s.x_scale),
        z: s.full.z.scale(&s.z_scale),
        v: s.full.v.clone(),
    };
    let mut kt = meta_constants(&s.curve)?;
    let mut kq = meta_constants(base)?;
    if fault {
        kt.f[1] = kt.f[1].clone() + RatFun::one();
        kq.f[1] = kq.f[1].clone() + Rational::one();
    }
    let rels = if barred { Relation::META_BAR } else { Relation::META };
    let limit = size.saturating_sub(margin);
    rels.into_iter()
        .map(|rel| {
            let full = relation_residual(rel, &scaled, Constants::Meta(&kt))?;
            let leading = relation_residual(rel, &s.lead, Constants::Meta(&kq))?;
            let mut witness = None;
            for (i, j, v) in full.nonzeros() {
                if i.max(j) >= limit {
                    continue;
                }
                let (d, c) = leading_at_infinity(v)?;
                if d >= 0 {
                    witness = Some(((i, j), d, c));
                    break;
                }
            }
            Ok((rel, MetaCheck { leading, witness }))
        })
        .collect()
}

/// [`meta_checks`] for a single relation.
pub fn meta_check(
    rel: Relation,
    base: &Params<Rational>,
    size: usize,
    margin: usize,
    spec: MetaSpec,
    fault: bool,
) -> Result<MetaCheck> {
    if !rel.is_meta() {
        return Err(Error::InvalidInput(format!("{} is not a meta relation", rel.name())));
    }
    let barred = Relation::META_BAR.contains(&rel);
    let all = meta_checks(base, size, margin, barred, spec, fault)?;
    Ok(all
        .into_iter()
        .find(|(r, _)| *r == rel)
        .expect("relation is in its group")
        .1)
}

/// Names in the claimed vanishing set of the `e = t` limit, as stated.
pub const CLAIMED_VANISHING: [&str; 7] = ["c2", "c4", "c5", "c10", "d2", "e1", "e7"];

#[derive(Debug, Clone, PartialEq)]
pub struct VanishingEntry {
    pub name: &'static str,
    /// Degree of the constant in t; `None` when it is identically zero.
    pub degree: Option<i64>,
    pub vanishes: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VanishingProfile {
    pub entries: Vec<VanishingEntry>,
    /// Claimed names that are not structure constants at all.
    pub unresolved: Vec<&'static str>,
}

impl VanishingProfile {
    pub fn vanishing_set(&self) -> Vec<&'static str> {
        self.entries.iter().filter(|e| e.vanishes).map(|e| e.name).collect()
    }

    /// The claimed names that do refer to constants.
    pub fn claimed_set() -> Vec<&'static str> {
        CLAIMED_VANISHING
            .iter()
            .copied()
            .filter(|n| WILSON_CONSTANT_NAMES.contains(n))
            .collect()
    }

    pub fn matches_claim(&self) -> bool {
        self.vanishing_set() == Self::claimed_set()
    }
}

/// Which structure constants drop out of the Wilson relations along
/// `e = t → ∞`, `f = 1/(b c d t)`.
///
/// In each relation the left side and every word are formed in Q(t). A
/// constant drops out of a relation when `deg(constant) + deg(word)` is
/// strictly below `deg(left side)`, degrees taken over the interior. It
/// vanishes when it drops out of every relation it appears in.
pub fn vanishing_profile(base: &Params<Rational>, size: usize, margin: usize) -> Result<VanishingProfile> {
    let curve = limit_curve(LimitPair::R3, base)?;
    let m = build_triplet(size, &curve, &TripletSpec::standard(false), false)?;
    let k = wilson_constants(&curve, E10Variant::Corrected)?;
    let mut drops: Vec<(&'static str, bool)> = Vec::new();
    for rel in Relation::WILSON {
        let lhs = interior_degree(&wilson_lhs(rel, &m, &k)?, margin)?;
        for (name, word) in wilson_rhs(rel) {
            let c = k.get(name).expect("constant name is known");
            let w = interior_degree(&word.eval(&m)?, margin)?;
            let term = match (c.is_zero(), w) {
                (false, Some(w)) => Some(leading_at_infinity(c)?.0 + w),
                _ => None,
            };
            let dropped = match (term, lhs) {
                (None, _) => true,
                (Some(_), None) => false,
                (Some(t), Some(l)) => t < l,
            };
            drops.push((name, dropped));
        }
    }
    let entries = WILSON_CONSTANT_NAMES
        .iter()
        .map(|&name| {
            let c = k.get(name).expect("constant name is known");
            let degree = if c.is_zero() {
                None
            } else {
                Some(leading_at_infinity(c)?.0)
            };
            let mut uses = drops.iter().filter(|(n, _)| *n == name).peekable();
            let vanishes = uses.peek().is_some() && uses.all(|(_, d)| *d);
            Ok(VanishingEntry { name, degree, vanishes })
        })
        .collect::<Result<Vec<_>>>()?;
    let unresolved = CLAIMED_VANISHING
        .iter()
        .copied()
        .filter(|n| !WILSON_CONSTANT_NAMES.contains(n))
        .collect();
    Ok(VanishingProfile { entries, unresolved })
}

/// Degrees in `a = t` of the entries of Z and X̃.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingProfile {
    pub z_diag: Vec<i64>,
    pub z_off: Vec<i64>,
    pub x: Vec<i64>,
}

impl ScalingProfile {
    /// X̃ and the diagonal of Z share one degree, and the off-diagonal Z
    /// entries sit exactly one below it.
    pub fn consistent(&self) -> bool {
        let Some(&top) = self.z_diag.first() else {
            return false;
        };
        self.z_diag.iter().all(|&d| d == top)
            && self.x.iter().all(|&d| d == top)
            && !self.z_off.is_empty()
            && self.z_off.iter().all(|&d| d == top - 1)
    }
}

pub fn scaling_profile(base: &Params<Rational>, size: usize) -> Result<ScalingProfile> {
    let curve = limit_curve(LimitPair::R, base)?;
    let opts = BuildOptions::new(
        Orientation::Coefficient,
        RhoVariant::Shift.value(&curve),
        VVariant::Shifted,
    );
    let z = build(MatrixKind::Z, size, &curve, &opts)?;
    let x = build(MatrixKind::X, size, &curve, &opts)?;
    let mut out = ScalingProfile {
        z_diag: Vec::new(),
        z_off: Vec::new(),
        x: Vec::new(),
    };
    for (i, j, v) in z.nonzeros() {
        let d = leading_at_infinity(v)?.0;
        if i == j {
            out.z_diag.push(d);
        } else {
            out.z_off.push(d);
        }
    }
    for (_, _, v) in x.nonzeros() {
        out.x.push(leading_at_infinity(v)?.0);
    }
    Ok(out)
}

/// `(Xᵀ - λ(q^x; c) Zᵀ) w` with `w_n = W_n(x)` (or `W̄_n(x)` when barred),
/// `0 ≤ n < size`, unshifted X in coefficient storage.
pub fn gevp_matrix_residual<F: Field>(params: &Params<F>, size: usize, x: usize, barred: bool) -> Result<Vec<F>> {
    let opts = BuildOptions::new(Orientation::Coefficient, F::zero(), VVariant::Plain);
    let (xk, zk, fam) = if barred {
        (MatrixKind::Xbar, MatrixKind::Zbar, FamilyTag::Wbar)
    } else {
        (MatrixKind::X, MatrixKind::Z, FamilyTag::W)
    };
    let xm = build(xk, size, params, &opts)?;
    let zm = build(zk, size, params, &opts)?;
    let lam = lambda(&params.qp(x as i64), &params.c, &params.q)?;
    let w = (0..size)
        .map(|n| eval_family(fam, n, x, params))
        .collect::<Result<Vec<F>>>()?;
    let pencil = xm.sub(&zm.scale(&lam))?.transpose();
    pencil.apply(&w)
}
