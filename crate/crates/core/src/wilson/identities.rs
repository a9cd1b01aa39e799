use std::cell::RefCell;
use std::collections::HashMap;

use super::coeffs::{default_rho, lambda, CoeffDir, Coeffs};
use super::families::{eval_family, FamilyTag};
use super::Params;
use crate::error::{Error, Result};
use crate::field::{one_minus, Field};
use crate::qseries::qpoch_multi;

/// The scalar identities with a residual evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    Gm,
    Gm2,
    GevpRecW,
    GevpRecWNorm,
    GevpDiffW,
    GevpRecWbar,
    GevpDiffWbar,
    Zzs,
    Zzs2,
    Rii,
    EvpQRacah,
    SymW,
    SymWbar,
}

impl Identity {
    pub const ALL: [Identity; 13] = [
        Identity::Gm,
        Identity::Gm2,
        Identity::GevpRecW,
        Identity::GevpRecWNorm,
        Identity::GevpDiffW,
        Identity::GevpRecWbar,
        Identity::GevpDiffWbar,
        Identity::Zzs,
        Identity::Zzs2,
        Identity::Rii,
        Identity::EvpQRacah,
        Identity::SymW,
        Identity::SymWbar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Gm => "GM",
            Identity::Gm2 => "GM2",
            Identity::GevpRecW => "GEVP_rec_W",
            Identity::GevpRecWNorm => "GEVP_rec_W_norm",
            Identity::GevpDiffW => "GEVP_diff_W",
            Identity::GevpRecWbar => "GEVP_rec_Wbar",
            Identity::GevpDiffWbar => "GEVP_diff_Wbar",
            Identity::Zzs => "ZZS",
            Identity::Zzs2 => "ZZS2",
            Identity::Rii => "RII",
            Identity::EvpQRacah => "EVP_qRacah",
            Identity::SymW => "SYM_W",
            Identity::SymWbar => "SYM_Wbar",
        }
    }
}

type CacheKey = (FamilyTag, bool, usize, usize);

/// Residual evaluator for one parameter point, memoizing function values.
///
/// Not `Sync`: create one per worker.
pub struct Evaluator<F: Field> {
    params: Params<F>,
    swapped: Params<F>,
    fault: bool,
    cache: RefCell<HashMap<CacheKey, F>>,
}

impl<F: Field> Evaluator<F> {
    pub fn new(params: Params<F>) -> Self {
        let swapped = params.swap_bc();
        Evaluator {
            params,
            swapped,
            fault: false,
            cache: RefCell::new(HashMap::new()),
        }
    }

    /// Perturbs `Z_{n+1,n}` (and the barred analogue) by one in every
    /// residual. Used to check that the harness detects a wrong coefficient.
    pub fn with_fault(mut self, fault: bool) -> Self {
        self.fault = fault;
        self
    }

    pub fn params(&self) -> &Params<F> {
        &self.params
    }

    fn side(&self, swapped: bool) -> &Params<F> {
        if swapped {
            &self.swapped
        } else {
            &self.params
        }
    }

    /// `fam` at `(n, x)`, with `b` and `c` exchanged when `swapped`.
    pub fn value(&self, fam: FamilyTag, swapped: bool, n: usize, x: usize) -> Result<F> {
        let key = (fam, swapped, n, x);
        if let Some(v) = self.cache.borrow().get(&key) {
            return Ok(v.clone());
        }
        let v = eval_family(fam, n, x, self.side(swapped))?;
        self.cache.borrow_mut().insert(key, v.clone());
        Ok(v)
    }

    fn coeffs(&self, swapped: bool) -> Coeffs<'_, F> {
        Coeffs::new(self.side(swapped), self.fault)
    }

    /// `Σ_dir coef(dir) · val(center + offset)`, dropping the index -1 term
    /// after checking that its coefficient is exactly zero.
    fn three_term(
        &self,
        context: &str,
        center: usize,
        coef: impl Fn(CoeffDir) -> Result<F>,
        val: impl Fn(usize) -> Result<F>,
    ) -> Result<F> {
        let mut sum = F::zero();
        for dir in CoeffDir::ALL {
            let c = coef(dir)?;
            let idx = center as i64 + dir.offset();
            if idx < 0 {
                if !c.is_zero() {
                    return Err(Error::BoundaryNonzero {
                        context: context.to_string(),
                        value: c.to_string(),
                    });
                }
                continue;
            }
            if c.is_zero() {
                continue;
            }
            sum = sum + c * val(idx as usize)?;
        }
        Ok(sum)
    }

    /// Exact left side minus right side of `id` at `(n, x)`.
    pub fn residual(&self, id: Identity, n: usize, x: usize) -> Result<F> {
        let p = &self.params;
        let (q, a, b, c) = (&p.q, &p.a, &p.b, &p.c);
        let (ni, xi) = (n as i64, x as i64);
        let lam_x = lambda(&p.qp(xi), c, q)?;
        let lam_n = lambda(&p.qp(ni), b, q)?;
        let ctx = id.name();
        match id {
            Identity::Gm | Identity::Gm2 => {
                let barred = id == Identity::Gm2;
                let k = self.coeffs(false);
                let (fam, alpha, beta, diag) = if barred {
                    (
                        FamilyTag::Wbar,
                        k.z(true, CoeffDir::Down, n)? * brace(Brace::ABar, n, x, p)?,
                        k.z(true, CoeffDir::Up, n)? * brace(Brace::BBar, n, x, p)?,
                        k.b_n(ni)?,
                    )
                } else {
                    (
                        FamilyTag::W,
                        k.z(false, CoeffDir::Down, n)? * brace(Brace::A, n, x, p)?,
                        k.z(false, CoeffDir::Up, n)? * brace(Brace::B, n, x, p)?,
                        k.a_n(ni)?,
                    )
                };
                let mid = -(alpha.clone() + beta.clone() + lam_x.clone() * diag);
                self.three_term(
                    ctx,
                    n,
                    |dir| {
                        Ok(match dir {
                            CoeffDir::Down => alpha.clone(),
                            CoeffDir::Diag => mid.clone(),
                            CoeffDir::Up => beta.clone(),
                        })
                    },
                    |m| self.value(fam, false, m, x),
                )
            }
            Identity::GevpRecW | Identity::GevpRecWbar => {
                let barred = id == Identity::GevpRecWbar;
                let fam = if barred { FamilyTag::Wbar } else { FamilyTag::W };
                let k = self.coeffs(false);
                self.three_term(
                    ctx,
                    n,
                    |dir| Ok(k.x(barred, dir, n)? - lam_x.clone() * k.z(barred, dir, n)?),
                    |m| self.value(fam, false, m, x),
                )
            }
            Identity::GevpRecWNorm => {
                let rho = default_rho(p);
                let shifted = p.qp(-xi) + c.clone() * p.qp(xi + 1);
                let k = self.coeffs(false);
                self.three_term(
                    ctx,
                    n,
                    |dir| Ok(k.x_shifted(false, dir, n, &rho)? + shifted.clone() * k.z(false, dir, n)?),
                    |m| self.value(FamilyTag::W, false, m, x),
                )
            }
            Identity::GevpDiffW | Identity::GevpDiffWbar => {
                let barred = id == Identity::GevpDiffWbar;
                let fam = if barred { FamilyTag::Wbar } else { FamilyTag::W };
                let k = self.coeffs(true);
                self.three_term(
                    ctx,
                    x,
                    |dir| Ok(k.x(barred, dir, x)? - lam_n.clone() * k.z(barred, dir, x)?),
                    |y| self.value(fam, false, n, y),
                )
            }
            Identity::Zzs | Identity::Zzs2 => {
                let barred = id == Identity::Zzs2;
                let fam = if barred { FamilyTag::Wbar } else { FamilyTag::W };
                let rec = self.coeffs(false);
                let diff = self.coeffs(true);
                let lhs = self.three_term(ctx, n, |dir| rec.z(barred, dir, n), |m| self.value(fam, false, m, x))?;
                let rhs = self.three_term(ctx, x, |dir| diff.z(barred, dir, x), |y| self.value(fam, false, n, y))?;
                Ok(lhs - rhs)
            }
            Identity::Rii => {
                let k = self.coeffs(false);
                let l1 = lambda(&p.qp(-ni).try_div(a)?, c, q)?;
                let l2 = lambda(&(b.clone() * p.qp(ni)).try_div(a)?, c, q)?;
                let up = k.z(false, CoeffDir::Up, n)? * (lam_x.clone() - l1) * (lam_x.clone() - l2);
                let mid = k.z(false, CoeffDir::Diag, n)? * lam_x.clone() - k.x(false, CoeffDir::Diag, n)?;
                let down = k.z(false, CoeffDir::Down, n)?;
                self.three_term(
                    ctx,
                    n,
                    |dir| {
                        Ok(match dir {
                            CoeffDir::Down => down.clone(),
                            CoeffDir::Diag => mid.clone(),
                            CoeffDir::Up => up.clone(),
                        })
                    },
                    |m| self.value(FamilyTag::P, false, m, x),
                )
            }
            Identity::EvpQRacah => {
                let (big_a, big_c) = q_racah_coeffs(n, p)?;
                let mid = -(big_a.clone() + big_c.clone()) + lam_x.clone();
                self.three_term(
                    ctx,
                    n,
                    |dir| {
                        Ok(match dir {
                            CoeffDir::Down => big_a.clone(),
                            CoeffDir::Diag => mid.clone(),
                            CoeffDir::Up => big_c.clone(),
                        })
                    },
                    |m| self.value(FamilyTag::R, false, m, x),
                )
            }
            Identity::SymW | Identity::SymWbar => {
                let fam = if id == Identity::SymW {
                    FamilyTag::W
                } else {
                    FamilyTag::Wbar
                };
                Ok(self.value(fam, false, x, n)? - self.value(fam, true, n, x)?)
            }
        }
    }
}

/// The q-Racah recurrence coefficients `A_n` and `C_n`.
fn q_racah_coeffs<F: Field>(n: usize, p: &Params<F>) -> Result<(F, F)> {
    use crate::field::Frac;
    let (q, b, c, d, e, f) = (&p.q, &p.b, &p.c, &p.d, &p.e, &p.f);
    let ni = n as i64;
    let qn1 = p.qp(ni + 1);
    let big_a = Frac::new(ni)
        .num(one_minus(&(b.clone() * qn1.clone())))
        .num(one_minus(&qn1.try_div(d)?))
        .num(one_minus(&qn1.try_div(e)?))
        .num(one_minus(&qn1.try_div(f)?))
        .den("1 - b q^(2n+2)", one_minus(&(b.clone() * p.qp(2 * ni + 2))))
        .den("1 - b q^(2n+1)", one_minus(&(b.clone() * p.qp(2 * ni + 1))))
        .build()?;
    let bqn = b.clone() * p.qp(ni);
    let big_c = Frac::new(ni)
        .num(c.clone() * q.clone())
        .num(one_minus(&p.qp(ni)))
        .num(one_minus(&(d.clone() * bqn.clone())))
        .num(one_minus(&(e.clone() * bqn.clone())))
        .num(one_minus(&(f.clone() * bqn)))
        .den("1 - b q^(2n+1)", one_minus(&(b.clone() * p.qp(2 * ni + 1))))
        .den("1 - b q^(2n)", one_minus(&(b.clone() * p.qp(2 * ni))))
        .build()?;
    Ok((big_a, big_c))
}

/// One-shot residual; prefer an [`Evaluator`] when sweeping a grid.
pub fn residual<F: Field>(id: Identity, n: usize, x: usize, params: &Params<F>) -> Result<F> {
    Evaluator::new(params.clone()).residual(id, n, x)
}

/// The factored brace expressions in the contiguous relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Brace {
    A,
    B,
    ABar,
    BBar,
}

impl Brace {
    pub const ALL: [Brace; 4] = [Brace::A, Brace::B, Brace::ABar, Brace::BBar];
}

/// Factored form of each brace.
fn brace<F: Field>(which: Brace, n: usize, x: usize, p: &Params<F>) -> Result<F> {
    let (q, a, b, c) = (&p.q, &p.a, &p.b, &p.c);
    let (ni, xi) = (n as i64, x as i64);
    Ok(match which {
        Brace::A => one_minus(&(a.clone() * p.qp(xi + ni + 1))) * ((c.clone() * p.qp(-ni)).try_div(a)? - p.qp(-xi)),
        Brace::B => {
            (a.clone() * p.qp(xi) - b.clone() * p.qp(ni))
                * (p.qp(-ni - xi).try_div(b)? - (c.clone() * q.clone()).try_div(a)?)
        }
        Brace::ABar => {
            (a.clone() * p.qp(xi) - b.clone() * p.qp(ni + 1))
                * (p.qp(-ni - xi - 1).try_div(b)? - (c.clone() * q.clone()).try_div(a)?)
        }
        Brace::BBar => one_minus(&(a.clone() * p.qp(xi + ni))) * ((c.clone() * p.qp(1 - ni)).try_div(a)? - p.qp(-xi)),
    })
}

/// Factored brace minus its λ-difference form, e.g. for `A`:
/// `(1 - a q^{x+n+1})(c q^{-n}/a - q^{-x}) - [λ(q^x;c) - λ(q^{-n-1}/a;c)]`.
pub fn brace_residual<F: Field>(which: Brace, n: usize, x: usize, p: &Params<F>) -> Result<F> {
    let (q, a, b, c) = (&p.q, &p.a, &p.b, &p.c);
    let ni = n as i64;
    let u = match which {
        Brace::A => p.qp(-ni - 1).try_div(a)?,
        Brace::B => (b.clone() * p.qp(ni)).try_div(a)?,
        Brace::ABar => (b.clone() * p.qp(ni + 1)).try_div(a)?,
        Brace::BBar => p.qp(-ni).try_div(a)?,
    };
    let diff = lambda(&p.qp(x as i64), c, q)? - lambda(&u, c, q)?;
    Ok(brace(which, n, x, p)? - diff)
}

/// `(a q^{x+1}, a q^{-x}/c; q)_{n+1} / (…)_n - (a q^n/c)(λ(q^x;c) - λ(q^{-n-1}/a;c))`.
pub fn rii_prefactor_residual<F: Field>(n: usize, x: usize, p: &Params<F>) -> Result<F> {
    let (q, a, c) = (&p.q, &p.a, &p.c);
    let (ni, xi) = (n as i64, x as i64);
    let syms = [a.clone() * p.qp(xi + 1), (a.clone() * p.qp(-xi)).try_div(c)?];
    let ratio = qpoch_multi(&syms, q, n + 1).try_div(&qpoch_multi(&syms, q, n))?;
    let rhs =
        (a.clone() * p.qp(ni)).try_div(c)? * (lambda(&p.qp(xi), c, q)? - lambda(&p.qp(-ni - 1).try_div(a)?, c, q)?);
    Ok(ratio - rhs)
}

/// `λ(q^x;c) - (1 + q c) + (q^{-x} + c q^{x+1})`.
pub fn eigen_shift_residual<F: Field>(x: usize, p: &Params<F>) -> Result<F> {
    let xi = x as i64;
    Ok(lambda(&p.qp(xi), &p.c, &p.q)? + default_rho(p) + p.qp(-xi) + p.c.clone() * p.qp(xi + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_rational, Rational};

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn sample() -> Params<Rational> {
        Params::with_dependent_f(r("2/3"), r("5/7"), r("-3/4"), r("9/5"), r("11/3"), r("-13/6")).unwrap()
    }

    #[test]
    fn every_identity_vanishes_on_a_small_grid() {
        let ev = Evaluator::new(sample());
        for id in Identity::ALL {
            for n in 0..4 {
                for x in 0..4 {
                    let v = ev.residual(id, n, x).unwrap();
                    assert!(v.is_zero(), "{} at n={n} x={x}: {v}", id.name());
                }
            }
        }
    }

    #[test]
    fn perturbed_coefficient_is_detected() {
        let ev = Evaluator::new(sample()).with_fault(true);
        let hits = (0..3)
            .flat_map(|n| (1..3).map(move |x| (n, x)))
            .filter(|&(n, x)| !ev.residual(Identity::GevpRecW, n, x).unwrap().is_zero())
            .count();
        assert!(hits > 0);
    }

    #[test]
    fn scalar_identities() {
        let p = sample();
        for n in 0..4 {
            for x in 0..4 {
                for b in Brace::ALL {
                    assert!(brace_residual(b, n, x, &p).unwrap().is_zero());
                }
                assert!(rii_prefactor_residual(n, x, &p).unwrap().is_zero());
            }
            assert!(eigen_shift_residual(n, &p).unwrap().is_zero());
        }
    }
}
