use std::time::Instant;

use num_traits::Signed;

use super::config::{Config, Execution, Mode, Suite};
use super::report::{CheckReport, ParamsRecord, Status, SuiteReport, Witness};
use super::sample::{sample_params, SampleSpec};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::specalg::{
    build_triplet, first_nonzero_on_interior, meta_checks, relation_residual, scaling_profile, vanishing_profile,
    wilson_constants, Constants, E10Variant, MetaSpec, Orientation, Relation, RhoVariant, TripletSpec, VVariant,
};
use crate::wilson::{
    brace_residual, eigen_shift_residual, eval_family, limit_gap, p_degree_profile, rii_prefactor_residual, Brace,
    Evaluator, FamilyTag, Identity, LimitPair, Params,
};

/// Generic truncation size and interior for the Wilson relations.
pub const GENERIC_ALGEBRA_SIZE: usize = 12;
pub const META_SIZE: usize = 10;
pub const META_MARGIN: usize = 2;
pub const VANISHING_SIZE: usize = 8;
pub const VANISHING_MARGIN: usize = 3;
pub const WATSON_MAX: usize = 6;
pub const LIMIT_MAX: usize = 4;
const SCALING_SIZE: usize = 6;

type Task<'a> = Box<dyn FnOnce() -> Vec<CheckReport> + Send + 'a>;

fn run_tasks(tasks: Vec<Task<'_>>, execution: Execution) -> Vec<CheckReport> {
    #[cfg(feature = "parallel")]
    if execution == Execution::Parallel {
        use rayon::prelude::*;
        return tasks.into_par_iter().flat_map_iter(|t| t()).collect();
    }
    let _ = execution;
    tasks.into_iter().flat_map(|t| t()).collect()
}

/// What a single check produced, before timing and labelling.
enum Outcome {
    Zero,
    Nonzero(Witness),
    Holds,
    Violated(Witness),
}

fn finish(
    id: String,
    mode: Mode,
    params: Option<&Params<Rational>>,
    indices: String,
    start: Instant,
    r: Result<Outcome>,
) -> CheckReport {
    let status = match r {
        Ok(Outcome::Zero) => Status::ExactZero,
        Ok(Outcome::Nonzero(w)) => Status::Nonzero(w),
        Ok(Outcome::Holds) => Status::Holds,
        Ok(Outcome::Violated(w)) => Status::Violated(w),
        Err(e) => Status::Skipped(e.to_string()),
    };
    CheckReport {
        check_id: id,
        mode: mode.name().to_string(),
        params: params.map(ParamsRecord::from),
        indices,
        status,
        wall_time_ms: start.elapsed().as_millis() as u64,
    }
}

fn sample_label(i: usize) -> String {
    format!("s{i:02}")
}

/// Scans a grid for the first nonzero residual.
fn grid_zero(
    ns: impl Iterator<Item = usize> + Clone,
    xs: impl Iterator<Item = usize> + Clone,
    mut f: impl FnMut(usize, usize) -> Result<Rational>,
) -> Result<Outcome> {
    for n in ns {
        for x in xs.clone() {
            let v = f(n, x).map_err(|e| at(e, &format!("n={n} x={x}")))?;
            if !v.is_zero() {
                return Ok(Outcome::Nonzero(Witness::new(format!("n={n} x={x}"), &v)));
            }
        }
    }
    Ok(Outcome::Zero)
}

fn at(e: Error, place: &str) -> Error {
    match e {
        Error::DegenerateParameter { factor, index } => Error::DegenerateParameter {
            factor: format!("{factor} (while evaluating {place})"),
            index,
        },
        other => other,
    }
}

struct Grid {
    n_max: usize,
    x_max: usize,
}

impl Grid {
    fn for_config(cfg: &Config, mode: Mode) -> Self {
        match mode {
            Mode::Generic => Grid {
                n_max: cfg.n_max,
                x_max: cfg.x_max,
            },
            Mode::Closure => Grid {
                n_max: cfg.n_max.min(cfg.n_closure),
                x_max: cfg.x_max.min(cfg.n_closure),
            },
        }
    }

    fn label(&self) -> String {
        format!("0<=n<={}, 0<=x<={}", self.n_max, self.x_max)
    }
}

const FUNCTION_IDENTITIES: [Identity; 12] = [
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
    Identity::SymW,
    Identity::SymWbar,
];

fn brace_name(b: Brace) -> &'static str {
    match b {
        Brace::A => "BRACE_A",
        Brace::B => "BRACE_B",
        Brace::ABar => "BRACE_ABAR",
        Brace::BBar => "BRACE_BBAR",
    }
}

/// Every scalar identity of one sample over the grid.
fn function_checks(cfg: &Config, mode: Mode, i: usize, p: &Params<Rational>) -> Vec<CheckReport> {
    let grid = Grid::for_config(cfg, mode);
    let s = sample_label(i);
    let ev = Evaluator::new(p.clone()).with_fault(cfg.inject_fault);
    let mut out = Vec::new();
    let mut push = |name: &str, indices: String, start: Instant, r: Result<Outcome>| {
        out.push(finish(
            format!("functions/{name}/{s}"),
            mode,
            Some(p),
            indices,
            start,
            r,
        ));
    };
    for id in FUNCTION_IDENTITIES {
        let start = Instant::now();
        let r = grid_zero(0..=grid.n_max, 0..=grid.x_max, |n, x| ev.residual(id, n, x));
        push(id.name(), grid.label(), start, r);
    }
    for b in Brace::ALL {
        let start = Instant::now();
        let r = grid_zero(0..=grid.n_max, 0..=grid.x_max, |n, x| brace_residual(b, n, x, p));
        push(brace_name(b), grid.label(), start, r);
    }
    let start = Instant::now();
    let r = grid_zero(0..=grid.n_max, 0..=grid.x_max, |n, x| rii_prefactor_residual(n, x, p));
    push("RII_PREFACTOR", grid.label(), start, r);

    let start = Instant::now();
    let r = grid_zero(0..=0, 0..=grid.x_max, |_, x| eigen_shift_residual(x, p));
    push("EIGEN_SHIFT", format!("0<=x<={}", grid.x_max), start, r);

    let start = Instant::now();
    let r = (|| {
        for n in 0..=grid.n_max {
            let nodes: Vec<usize> = (0..=n + 1).collect();
            let (deg, _) = p_degree_profile(n, p, &nodes).map_err(|e| at(e, &format!("n={n}")))?;
            if deg != n {
                return Ok(Outcome::Violated(Witness::note(format!("n={n}: degree {deg}"))));
            }
        }
        Ok(Outcome::Holds)
    })();
    push("P_DEGREE", format!("0<=n<={}", grid.n_max), start, r);

    let start = Instant::now();
    let r = grid_zero(0..=grid.n_max, 0..=grid.x_max, |n, x| {
        if n == 0 || x == 0 {
            Ok(ev.value(FamilyTag::Wbar, false, n, x)? - Rational::one())
        } else {
            Ok(Rational::zero())
        }
    });
    push("WBAR_INITIAL", grid.label(), start, r);
    out
}

/// Which Wilson-algebra conventions to run.
#[derive(Debug, Clone)]
pub struct AlgebraSelection {
    pub barred: Vec<bool>,
    pub rho: Vec<RhoVariant>,
    pub modes: Vec<Mode>,
}

impl Default for AlgebraSelection {
    fn default() -> Self {
        AlgebraSelection {
            barred: vec![false, true],
            rho: vec![RhoVariant::Shift],
            modes: vec![Mode::Closure, Mode::Generic],
        }
    }
}

fn triplet_name(barred: bool) -> &'static str {
    if barred {
        "XbarZbar"
    } else {
        "XZ"
    }
}

fn algebra_checks(
    cfg: &Config,
    mode: Mode,
    barred: bool,
    rho: RhoVariant,
    i: usize,
    p: &Params<Rational>,
) -> Vec<CheckReport> {
    let start = Instant::now();
    let size = match mode {
        Mode::Closure => cfg.n_closure + 1,
        Mode::Generic => GENERIC_ALGEBRA_SIZE,
    };
    let spec = TripletSpec {
        barred,
        orientation: if barred {
            Orientation::Coefficient
        } else {
            Orientation::EquationRow
        },
        rho,
        v_variant: VVariant::Shifted,
    };
    let id = |rel: Relation| {
        format!(
            "algebra/{}/{}/rho={}/{}/{}",
            mode.name(),
            triplet_name(barred),
            rho.name(),
            rel.name(),
            sample_label(i)
        )
    };
    let setup = build_triplet(size, p, &spec, false).and_then(|m| {
        let mut k = wilson_constants(p, E10Variant::Corrected)?;
        if cfg.inject_fault {
            k.c[1] = k.c[1].clone() + Rational::one();
        }
        Ok((m, k))
    });
    let (m, k) = match setup {
        Ok(v) => v,
        Err(e) => {
            return Relation::WILSON
                .into_iter()
                .map(|rel| finish(id(rel), mode, Some(p), format!("size {size}"), start, Err(e.clone())))
                .collect();
        }
    };
    Relation::WILSON
        .into_iter()
        .map(|rel| {
            let start = Instant::now();
            let margin = match mode {
                Mode::Closure => 0,
                Mode::Generic => rel.word_length(),
            };
            let r = relation_residual(rel, &m, Constants::Wilson(&k)).map(|res| {
                match first_nonzero_on_interior(&res, margin) {
                    None => Outcome::Zero,
                    Some((i, j)) => Outcome::Nonzero(Witness::new(format!("entry ({i},{j})"), &res.entry(i, j))),
                }
            });
            let indices = format!("size {size}, margin {margin}");
            finish(id(rel), mode, Some(p), indices, start, r)
        })
        .collect()
}

/// Gap check for one pair and base point over `n, x ≤ 4` and the grid.
fn gap_check(cfg: &Config, pair: LimitPair, i: usize, p: &Params<Rational>) -> CheckReport {
    let start = Instant::now();
    let grid = &cfg.limit_grid;
    let tol = Rational::new(1.into(), 1000.into());
    let r = (|| {
        for n in 0..=LIMIT_MAX {
            for x in 0..=LIMIT_MAX {
                let place = |t: &Rational| format!("n={n} x={x} t={t}");
                let limit = eval_family(pair.limit_family(), n, x, p).map_err(|e| at(e, &format!("n={n} x={x}")))?;
                let gaps = grid
                    .iter()
                    .map(|t| limit_gap(pair, n, x, p, t).map_err(|e| at(e, &place(t))))
                    .collect::<Result<Vec<_>>>()?;
                if n == 0 || x == 0 {
                    if let Some(k) = gaps.iter().position(|g| !g.is_zero()) {
                        return Ok(Outcome::Violated(Witness::new(place(&grid[k]), &gaps[k])));
                    }
                    continue;
                }
                if let Some(k) = (1..gaps.len()).find(|&k| gaps[k] >= gaps[k - 1]) {
                    return Ok(Outcome::Violated(Witness::new(
                        format!("{}: gap not decreasing", place(&grid[k])),
                        &gaps[k],
                    )));
                }
                let scale = if limit.abs() > Rational::one() {
                    limit.abs()
                } else {
                    Rational::one()
                };
                let last = gaps.last().expect("grid is nonempty");
                if *last >= tol.clone() * scale {
                    return Ok(Outcome::Violated(Witness::new(
                        format!(
                            "{}: final gap above 1e-3 relative",
                            place(grid.last().expect("nonempty"))
                        ),
                        last,
                    )));
                }
            }
        }
        Ok(Outcome::Holds)
    })();
    let indices = format!("0<=n,x<={LIMIT_MAX}, {} values of t", grid.len());
    finish(
        format!("limits/GAP_{}/{}", pair.name(), sample_label(i)),
        Mode::Generic,
        Some(p),
        indices,
        start,
        r,
    )
}

fn meta_group(cfg: &Config, barred: bool, i: usize, p: &Params<Rational>) -> Vec<CheckReport> {
    let start = Instant::now();
    let rels = if barred { Relation::META_BAR } else { Relation::META };
    let indices = format!("size {META_SIZE}, margin {META_MARGIN}");
    let id = |rel: Relation| format!("limits/{}/{}", rel.name(), sample_label(i));
    match meta_checks(
        p,
        META_SIZE,
        META_MARGIN,
        barred,
        MetaSpec::standard(),
        cfg.inject_fault,
    ) {
        Err(e) => rels
            .into_iter()
            .map(|rel| finish(id(rel), Mode::Generic, Some(p), indices.clone(), start, Err(e.clone())))
            .collect(),
        Ok(results) => {
            let each = start.elapsed().as_millis() as u64 / 3;
            results
                .into_iter()
                .map(|(rel, chk)| {
                    let r = match chk.witness {
                        None => Outcome::Holds,
                        Some(((i, j), d, c)) => {
                            Outcome::Violated(Witness::new(format!("entry ({i},{j}), t-degree {d}"), &c))
                        }
                    };
                    let mut rep = finish(id(rel), Mode::Generic, Some(p), indices.clone(), Instant::now(), Ok(r));
                    rep.wall_time_ms = each;
                    rep
                })
                .collect()
        }
    }
}

fn braces(names: &[&str]) -> String {
    format!("{{{}}}", names.join(", "))
}

fn vanishing_check(p: &Params<Rational>) -> CheckReport {
    let start = Instant::now();
    let r = vanishing_profile(p, VANISHING_SIZE, VANISHING_MARGIN).map(|prof| {
        let got = prof.vanishing_set();
        let claimed = crate::specalg::VanishingProfile::claimed_set();
        let note = format!(
            "computed {}; claimed {}; unresolved {}",
            braces(&got),
            braces(&claimed),
            braces(&prof.unresolved)
        );
        if prof.matches_claim() {
            Outcome::Holds
        } else {
            Outcome::Violated(Witness::note(note))
        }
    });
    let indices = format!("size {VANISHING_SIZE}, margin {VANISHING_MARGIN}");
    finish("limits/VANISHING/s00".into(), Mode::Generic, Some(p), indices, start, r)
}

fn scaling_check(p: &Params<Rational>) -> CheckReport {
    let start = Instant::now();
    let r = scaling_profile(p, SCALING_SIZE).map(|prof| {
        if prof.consistent() {
            Outcome::Holds
        } else {
            Outcome::Violated(Witness::note(format!(
                "degrees: Z diagonal {:?}, Z off-diagonal {:?}, X {:?}",
                prof.z_diag, prof.z_off, prof.x
            )))
        }
    });
    finish(
        "limits/SCALING_a/s00".into(),
        Mode::Generic,
        Some(p),
        format!("size {SCALING_SIZE}"),
        start,
        r,
    )
}

fn watson_check(cfg: &Config, i: usize, p: &Params<Rational>) -> CheckReport {
    let start = Instant::now();
    let r = grid_zero(0..=WATSON_MAX, 0..=0, |n, _| {
        let s = crate::wilson::watson_sides(&p.a, &p.b, &p.c, &p.d, &p.e, n, &p.q)?;
        let pre = if cfg.inject_fault {
            s.prefactor + Rational::one()
        } else {
            s.prefactor
        };
        Ok(s.lhs - pre * s.series)
    });
    finish(
        format!("limits/WATSON/{}", sample_label(i)),
        Mode::Generic,
        Some(p),
        format!("0<=n<={WATSON_MAX}"),
        start,
        r,
    )
}

fn evp_check(cfg: &Config, i: usize, p: &Params<Rational>) -> CheckReport {
    let start = Instant::now();
    let grid = Grid::for_config(cfg, Mode::Generic);
    let ev = Evaluator::new(p.clone()).with_fault(cfg.inject_fault);
    let r = grid_zero(0..=grid.n_max, 0..=grid.x_max, |n, x| {
        ev.residual(Identity::EvpQRacah, n, x)
    });
    finish(
        format!("limits/{}/{}", Identity::EvpQRacah.name(), sample_label(i)),
        Mode::Generic,
        Some(p),
        grid.label(),
        start,
        r,
    )
}

fn sample_all(cfg: &Config, mode: Mode, count: usize) -> Result<Vec<Params<Rational>>> {
    let spec = SampleSpec { mode, n: cfg.n_closure };
    (0..count).map(|i| sample_params(cfg.seed, i as u64, spec)).collect()
}

/// Runs the selected suites. Parameter points are drawn up front, so a
/// sampling failure is reported as an error rather than a check.
pub fn run_suite(cfg: &Config) -> Result<SuiteReport> {
    cfg.validate()?;
    let generic = sample_all(
        cfg,
        Mode::Generic,
        cfg.samples.max(cfg.limit_samples).max(cfg.meta_samples),
    )?;
    let mut tasks: Vec<Task<'_>> = Vec::new();
    if cfg.suites.contains(&Suite::Functions) {
        let pts = match cfg.mode {
            Mode::Generic => generic[..cfg.samples].to_vec(),
            Mode::Closure => sample_all(cfg, Mode::Closure, cfg.samples)?,
        };
        for (i, p) in pts.into_iter().enumerate() {
            tasks.push(Box::new(move || function_checks(cfg, cfg.mode, i, &p)));
        }
    }
    if cfg.suites.contains(&Suite::Algebra) {
        tasks.extend(algebra_tasks(cfg, &AlgebraSelection::default(), &generic)?);
    }
    if cfg.suites.contains(&Suite::Limits) {
        for (i, p) in generic.iter().take(cfg.samples).enumerate() {
            tasks.push(Box::new(move || vec![evp_check(cfg, i, p), watson_check(cfg, i, p)]));
        }
        tasks.extend(gap_tasks(cfg, &LimitPair::ALL, &generic));
        for (i, p) in generic.iter().take(cfg.meta_samples).enumerate() {
            for barred in [false, true] {
                tasks.push(Box::new(move || meta_group(cfg, barred, i, p)));
            }
        }
        let p0 = &generic[0];
        tasks.push(Box::new(move || vec![vanishing_check(p0)]));
        tasks.push(Box::new(move || vec![scaling_check(p0)]));
    }
    Ok(SuiteReport::new(run_tasks(tasks, cfg.execution), cfg))
}

fn algebra_tasks<'a>(
    cfg: &'a Config,
    sel: &AlgebraSelection,
    generic: &'a [Params<Rational>],
) -> Result<Vec<Task<'a>>> {
    let mut tasks: Vec<Task<'a>> = Vec::new();
    for &mode in &sel.modes {
        let pts = match mode {
            Mode::Generic => generic[..cfg.samples].to_vec(),
            Mode::Closure => sample_all(cfg, Mode::Closure, cfg.samples)?,
        };
        for (i, p) in pts.into_iter().enumerate() {
            for &barred in &sel.barred {
                for &rho in &sel.rho {
                    let p = p.clone();
                    tasks.push(Box::new(move || algebra_checks(cfg, mode, barred, rho, i, &p)));
                }
            }
        }
    }
    Ok(tasks)
}

fn gap_tasks<'a>(cfg: &'a Config, pairs: &[LimitPair], generic: &'a [Params<Rational>]) -> Vec<Task<'a>> {
    let mut tasks: Vec<Task<'a>> = Vec::new();
    for &pair in pairs {
        for (i, p) in generic.iter().take(cfg.limit_samples).enumerate() {
            tasks.push(Box::new(move || vec![gap_check(cfg, pair, i, p)]));
        }
    }
    tasks
}

/// Wilson-algebra checks under explicitly chosen conventions.
pub fn run_algebra(cfg: &Config, sel: &AlgebraSelection) -> Result<SuiteReport> {
    cfg.validate()?;
    let generic = sample_all(cfg, Mode::Generic, cfg.samples)?;
    let tasks = algebra_tasks(cfg, sel, &generic)?;
    Ok(SuiteReport::new(run_tasks(tasks, cfg.execution), cfg))
}

/// Limit-gap checks for the given pairs along `cfg.limit_grid`.
pub fn run_limits(cfg: &Config, pairs: &[LimitPair]) -> Result<SuiteReport> {
    cfg.validate()?;
    let generic = sample_all(cfg, Mode::Generic, cfg.limit_samples)?;
    let tasks = gap_tasks(cfg, pairs, &generic);
    Ok(SuiteReport::new(run_tasks(tasks, cfg.execution), cfg))
}
