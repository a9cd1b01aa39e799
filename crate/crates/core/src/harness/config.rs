use std::fmt;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::field::{parse_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Free parameters with `f = 1/(b c d e)`.
    Generic,
    /// `f = q^{N+1}`, which makes every operator exactly finite.
    Closure,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Generic => "generic",
            Mode::Closure => "closure",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "generic" => Ok(Mode::Generic),
            "closure" => Ok(Mode::Closure),
            _ => Err(Error::Config(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Functions,
    Algebra,
    Limits,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::Functions, Suite::Algebra, Suite::Limits];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Functions => "functions",
            Suite::Algebra => "algebra",
            Suite::Limits => "limits",
        }
    }

    /// A single suite name, or `all`.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Suite::ALL);
                continue;
            }
            let suite = Suite::ALL
                .into_iter()
                .find(|x| x.name() == part)
                .ok_or_else(|| Error::Config(format!("unknown suite {part:?}")))?;
            out.push(suite);
        }
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err(Error::Config("no suites selected".into()));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Text,
    Records,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "records" => Ok(Format::Records),
            _ => Err(Error::Config(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Parallel,
    Sequential,
}

impl Execution {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "parallel" => Ok(Execution::Parallel),
            "sequential" => Ok(Execution::Sequential),
            _ => Err(Error::Config(format!("unknown execution {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub mode: Mode,
    /// Closure truncation: operators have size `N + 1`.
    pub n_closure: usize,
    pub n_max: usize,
    pub x_max: usize,
    pub seed: u64,
    pub samples: usize,
    pub limit_grid: Vec<Rational>,
    pub limit_samples: usize,
    pub meta_samples: usize,
    pub suites: Vec<Suite>,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub execution: Execution,
    /// Perturb one coefficient or constant in every check.
    pub inject_fault: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            mode: Mode::Generic,
            n_closure: 8,
            n_max: 7,
            x_max: 7,
            seed: 1,
            samples: 20,
            limit_grid: ["100", "1000", "10000"]
                .iter()
                .map(|s| parse_rational(s).expect("literal"))
                .collect(),
            limit_samples: 5,
            meta_samples: 3,
            suites: Suite::ALL.to_vec(),
            output: None,
            format: Format::Text,
            execution: Execution::Parallel,
            inject_fault: false,
        }
    }
}

fn parse_usize(key: &str, v: &str) -> Result<usize> {
    v.parse()
        .map_err(|_| Error::Config(format!("{key}: expected a non-negative integer, got {v:?}")))
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(Error::Config(format!("{key}: expected true or false, got {v:?}"))),
    }
}

impl Config {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key.trim() {
            "mode" => self.mode = Mode::parse(v)?,
            "N" | "N_max" => self.n_closure = parse_usize(key, v)?,
            "n_max" => self.n_max = parse_usize(key, v)?,
            "x_max" => self.x_max = parse_usize(key, v)?,
            "seed" => {
                self.seed = v
                    .parse()
                    .map_err(|_| Error::Config(format!("seed: expected an integer, got {v:?}")))?
            }
            "samples" => self.samples = parse_usize(key, v)?,
            "limit_samples" => self.limit_samples = parse_usize(key, v)?,
            "meta_samples" => self.meta_samples = parse_usize(key, v)?,
            "limit_grid" => {
                self.limit_grid = v
                    .split(',')
                    .map(|s| parse_rational(s).map_err(|e| Error::Config(format!("limit_grid: {e}"))))
                    .collect::<Result<_>>()?
            }
            "suites" => self.suites = Suite::parse_list(v)?,
            "output" => self.output = Some(PathBuf::from(v)),
            "format" => self.format = Format::parse(v)?,
            "execution" => self.execution = Execution::parse(v)?,
            "inject_fault" => self.inject_fault = parse_bool(key, v)?,
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Parses `key = value` lines; `#` starts a comment. Unset keys keep
    /// their defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", lineno + 1)))?;
            cfg.set(k, v)
                .map_err(|e| Error::Config(format!("line {}: {}", lineno + 1, strip(e))))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_closure < 2 {
            return Err(Error::Config("N must be at least 2".into()));
        }
        if self.samples < 1 {
            return Err(Error::Config("samples must be at least 1".into()));
        }
        if self.limit_grid.is_empty() {
            return Err(Error::Config("limit_grid is empty".into()));
        }
        if self.limit_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("limit_grid must be strictly increasing".into()));
        }
        if self.suites.is_empty() {
            return Err(Error::Config("no suites selected".into()));
        }
        Ok(())
    }
}

fn strip(e: Error) -> String {
    match e {
        Error::Config(m) => m,
        other => other.to_string(),
    }
}

/// One line per setting, in the order of the config file keys. Output and
/// execution settings are left out so that the echo does not depend on
/// where or how a report is produced.
impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let grid: Vec<String> = self.limit_grid.iter().map(|t| t.to_string()).collect();
        let suites: Vec<&str> = self.suites.iter().map(|s| s.name()).collect();
        writeln!(f, "mode = {}", self.mode.name())?;
        writeln!(f, "N = {}", self.n_closure)?;
        writeln!(f, "n_max = {}", self.n_max)?;
        writeln!(f, "x_max = {}", self.x_max)?;
        writeln!(f, "seed = {}", self.seed)?;
        writeln!(f, "samples = {}", self.samples)?;
        writeln!(f, "limit_grid = {}", grid.join(", "))?;
        writeln!(f, "limit_samples = {}", self.limit_samples)?;
        writeln!(f, "meta_samples = {}", self.meta_samples)?;
        writeln!(f, "suites = {}", suites.join(", "))?;
        write!(f, "inject_fault = {}", self.inject_fault)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_file_with_comments() {
        let text = "# run\nmode = closure\nN = 6  # small\n\nlimit_grid = 10, 100/3, 1000\nsuites = functions,limits\n";
        let cfg = Config::parse(text).unwrap();
        assert_eq!(cfg.mode, Mode::Closure);
        assert_eq!(cfg.n_closure, 6);
        assert_eq!(cfg.limit_grid[1], parse_rational("100/3").unwrap());
        assert_eq!(cfg.suites, vec![Suite::Functions, Suite::Limits]);
        assert_eq!(cfg.samples, 20);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Config::parse("N = 1"), Err(Error::Config(_))));
        assert!(matches!(Config::parse("samples = 0"), Err(Error::Config(_))));
        assert!(matches!(Config::parse("limit_grid = 100, 10"), Err(Error::Config(_))));
        assert!(matches!(Config::parse("colour = red"), Err(Error::Config(_))));
        assert!(matches!(Config::parse("just words"), Err(Error::Config(_))));
        assert!(matches!(Config::parse("seed = 0.5"), Err(Error::Config(_))));
    }

    #[test]
    fn echo_round_trips() {
        let cfg = Config::parse("mode = closure\nseed = 9\nsuites = algebra").unwrap();
        assert_eq!(Config::parse(&cfg.to_string()).unwrap(), cfg);
    }
}
