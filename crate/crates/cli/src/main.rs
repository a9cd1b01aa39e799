use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use wilson_core::field::{parse_rational, Rational};
use wilson_core::harness::{
    emit_report, parse_params, run_algebra, run_limits, run_suite, AlgebraSelection, Config, Execution, Format, Mode,
    Suite, SuiteReport,
};
use wilson_core::specalg::RhoVariant;
use wilson_core::wilson::{coeff, coeff_scalar, eval_family, CoeffDir, CoeffFamily, FamilyTag, LimitPair, ScalarCoeff};
use wilson_core::Error;

#[derive(Parser)]
#[command(
    name = "wilson",
    version,
    about = "Exact checks for Wilson rational functions and their algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Functions,
    Algebra,
    Limits,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Generic,
    Closure,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Records,
}

#[derive(Clone, Copy, ValueEnum)]
enum TripletArg {
    #[value(name = "XZ")]
    Xz,
    #[value(name = "XbarZbar")]
    XbarZbar,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum RhoArg {
    #[value(name = "0")]
    Zero,
    Shift,
    Both,
}

/// Options shared by the commands that produce a report.
#[derive(clap::Args)]
struct Common {
    /// Config file with `key = value` lines; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Run checks on one thread.
    #[arg(long)]
    sequential: bool,
    /// Perturb one coefficient in every check.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print one function or coefficient value.
    Eval {
        /// A family (W, Wbar, P, R, R1, R1bar, R2, R2bar, R3), a coefficient
        /// such as `Z:down`, `Xbar:diag`, or a scalar `A`, `B`.
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        x: usize,
        #[arg(long)]
        params_file: PathBuf,
        /// Shift applied to X coefficients, as "p/q".
        #[arg(long, default_value = "0")]
        rho: String,
    },
    /// Run check suites.
    Verify {
        #[arg(long, value_enum)]
        suite: Option<SuiteArg>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Closure truncation.
        #[arg(long = "N")]
        n: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Limit gaps along the q-Racah limit curves.
    Limits {
        /// R, R1, R1bar, R2, R2bar, R3 or all.
        #[arg(long, default_value = "all")]
        pair: String,
        /// Comma-separated increasing t values, e.g. "100,1000,10000".
        #[arg(long)]
        grid: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Wilson-algebra relations under chosen conventions.
    Algebra {
        #[arg(long, value_enum, default_value = "both")]
        triplet: TripletArg,
        #[arg(long = "rho-variant", value_enum, default_value = "shift")]
        rho_variant: RhoArg,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long = "N")]
        n: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(m) => Failure::Io(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn load_config(common: &Common) -> Result<Config, Failure> {
    let mut cfg = match &common.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Config::parse(&text)?
        }
        None => Config::default(),
    };
    if let Some(s) = common.samples {
        cfg.samples = s;
        cfg.limit_samples = cfg.limit_samples.min(s);
        cfg.meta_samples = cfg.meta_samples.min(s);
    }
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    if let Some(path) = &common.report {
        cfg.output = Some(path.clone());
    }
    if let Some(f) = common.format {
        cfg.format = match f {
            FormatArg::Text => Format::Text,
            FormatArg::Records => Format::Records,
        };
    }
    if common.sequential {
        cfg.execution = Execution::Sequential;
    }
    cfg.inject_fault |= common.inject_fault;
    Ok(cfg)
}

fn mode(m: ModeArg) -> Mode {
    match m {
        ModeArg::Generic => Mode::Generic,
        ModeArg::Closure => Mode::Closure,
    }
}

fn write_report(cfg: &Config, report: &SuiteReport) -> Result<u8, Failure> {
    let bytes = emit_report(report, cfg.format);
    match &cfg.output {
        Some(path) => {
            fs::write(path, &bytes).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            let c = report.counts();
            eprintln!(
                "{} checks: {} passed, {} failed, {} skipped; report written to {}",
                c.total(),
                c.exact_zero + c.holds,
                c.failures(),
                c.skipped,
                path.display()
            );
        }
        None => io::stdout().write_all(&bytes).map_err(|e| Failure::Io(e.to_string()))?,
    }
    Ok(report.exit_code() as u8)
}

fn eval_value(family: &str, n: usize, x: usize, path: &PathBuf, rho: &str) -> Result<Rational, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let p = parse_params(&text)?;
    let rho = parse_rational(rho)?;
    if let Ok(fam) = FamilyTag::parse(family) {
        return Ok(eval_family(fam, n, x, &p)?);
    }
    let scalar = match family {
        "A" | "a" => Some(ScalarCoeff::A),
        "B" | "b" => Some(ScalarCoeff::B),
        _ => None,
    };
    if let Some(s) = scalar {
        return Ok(coeff_scalar(s, n, &p)?);
    }
    let (name, dir) = family
        .split_once(':')
        .ok_or_else(|| Failure::Usage(format!("unknown family {family:?}")))?;
    let fam = match name {
        "Z" => CoeffFamily::Z,
        "X" => CoeffFamily::X,
        "Zbar" => CoeffFamily::Zbar,
        "Xbar" => CoeffFamily::Xbar,
        _ => return Err(Failure::Usage(format!("unknown coefficient {name:?}"))),
    };
    let dir = match dir {
        "down" => CoeffDir::Down,
        "diag" => CoeffDir::Diag,
        "up" => CoeffDir::Up,
        _ => {
            return Err(Failure::Usage(format!(
                "unknown direction {dir:?}; use down, diag or up"
            )))
        }
    };
    Ok(coeff(fam, dir, n, &p, &rho)?)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Eval {
            family,
            n,
            x,
            params_file,
            rho,
        } => {
            let v = eval_value(&family, n, x, &params_file, &rho)?;
            println!("{v}");
            Ok(0)
        }
        Command::Verify {
            suite,
            mode: m,
            n,
            common,
        } => {
            let mut cfg = load_config(&common)?;
            if let Some(s) = suite {
                cfg.suites = match s {
                    SuiteArg::Functions => vec![Suite::Functions],
                    SuiteArg::Algebra => vec![Suite::Algebra],
                    SuiteArg::Limits => vec![Suite::Limits],
                    SuiteArg::All => Suite::ALL.to_vec(),
                };
            }
            if let Some(m) = m {
                cfg.mode = mode(m);
            }
            if let Some(n) = n {
                cfg.n_closure = n;
            }
            let report = run_suite(&cfg)?;
            write_report(&cfg, &report)
        }
        Command::Limits { pair, grid, common } => {
            let mut cfg = load_config(&common)?;
            if let Some(g) = grid {
                cfg.set("limit_grid", &g)?;
            }
            let pairs = if pair == "all" {
                LimitPair::ALL.to_vec()
            } else {
                vec![LimitPair::parse(&pair)?]
            };
            let report = run_limits(&cfg, &pairs)?;
            write_report(&cfg, &report)
        }
        Command::Algebra {
            triplet,
            rho_variant,
            mode: m,
            n,
            common,
        } => {
            let mut cfg = load_config(&common)?;
            if let Some(n) = n {
                cfg.n_closure = n;
            }
            let sel = AlgebraSelection {
                barred: match triplet {
                    TripletArg::Xz => vec![false],
                    TripletArg::XbarZbar => vec![true],
                    TripletArg::Both => vec![false, true],
                },
                rho: match rho_variant {
                    RhoArg::Zero => vec![RhoVariant::Zero],
                    RhoArg::Shift => vec![RhoVariant::Shift],
                    RhoArg::Both => vec![RhoVariant::Zero, RhoVariant::Shift],
                },
                modes: match m {
                    Some(m) => vec![mode(m)],
                    None => vec![Mode::Closure, Mode::Generic],
                },
            };
            let report = run_algebra(&cfg, &sel)?;
            write_report(&cfg, &report)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("wilson: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Io(m)) => {
            eprintln!("wilson: {m}");
            ExitCode::from(2)
        }
    }
}
