//! Resolved run configuration. Every command echoes it into `manifest.json`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use peterweyl_core::factorize::default_pieces;
use peterweyl_core::group::GroupKind;
use peterweyl_core::weights::WeightFunction;
use serde::{Deserialize, Serialize};

use crate::args::{Command, CommonArgs};
use crate::error::{CliError, CliResult};
use crate::formats::read_weight_table;

/// A weight as written on the command line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum WeightSpec {
    Gevrey(f64),
    Log1p,
    Table(PathBuf),
}

impl WeightSpec {
    pub fn build(&self) -> CliResult<WeightFunction> {
        Ok(match self {
            WeightSpec::Gevrey(s) => WeightFunction::gevrey(*s)?,
            WeightSpec::Log1p => WeightFunction::log1p(),
            WeightSpec::Table(path) => WeightFunction::tabulated(read_weight_table(path)?)?,
        })
    }
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSpec::Gevrey(s) => write!(f, "gevrey:s={s}"),
            WeightSpec::Log1p => f.write_str("log1p"),
            WeightSpec::Table(p) => write!(f, "table:{}", p.display()),
        }
    }
}

impl FromStr for WeightSpec {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        let bad = || CliError::Usage(format!("unrecognised weight {s:?}; expected gevrey:s=<s>, log1p or table:<path>"));
        if s == "log1p" {
            return Ok(WeightSpec::Log1p);
        }
        if let Some(path) = s.strip_prefix("table:") {
            return Ok(WeightSpec::Table(PathBuf::from(path)));
        }
        let rest = s.strip_prefix("gevrey:").ok_or_else(bad)?;
        let value = rest.strip_prefix("s=").unwrap_or(rest);
        value.parse().map(WeightSpec::Gevrey).map_err(|_| bad())
    }
}

impl TryFrom<String> for WeightSpec {
    type Error = CliError;

    fn try_from(s: String) -> CliResult<Self> {
        s.parse()
    }
}

impl From<WeightSpec> for String {
    fn from(w: WeightSpec) -> String {
        w.to_string()
    }
}

/// Closed-form test functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Builtin {
    /// `e^{-t√λ} Id`.
    Poisson(f64),
    /// `e^{-tλ} Id`.
    Heat(f64),
    /// Gevrey bump of order `s` and halfwidth `δ` centred at the identity of `T^1`.
    Bump { s: f64, delta: f64 },
}

impl FromStr for Builtin {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        let bad = || CliError::Usage(format!("unrecognised builtin {s:?}"));
        let num = |v: &str| v.parse::<f64>().map_err(|_| bad());
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["poisson", t] => Ok(Builtin::Poisson(num(t)?)),
            ["heat", t] => Ok(Builtin::Heat(num(t)?)),
            ["bump", order, delta] => Ok(Builtin::Bump { s: num(order)?, delta: num(delta)? }),
            _ => Err(bad()),
        }
    }
}

/// Where the input function comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum InputSource {
    Builtin(Builtin),
    GridCsv(PathBuf),
    Coefficients(PathBuf),
}

impl InputSource {
    pub fn parse(s: &str) -> CliResult<Self> {
        let head = s.split(':').next().unwrap_or_default();
        if matches!(head, "poisson" | "heat" | "bump") {
            return s.parse().map(InputSource::Builtin);
        }
        let path = PathBuf::from(s);
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => Ok(InputSource::Coefficients(path)),
            _ => Ok(InputSource::GridCsv(path)),
        }
    }
}

/// Command-specific settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum CommandParams {
    Transform,
    Classify,
    Factorize {
        supported: bool,
        support_delta: f64,
        pieces: usize,
        bump_order: f64,
        rep: Option<String>,
    },
    Verify {
        inject_fault: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub params: CommandParams,
    pub group: String,
    pub bandlimit: usize,
    pub weight: WeightSpec,
    pub h: f64,
    pub h_prime: f64,
    pub input: Option<String>,
    pub out: PathBuf,
    pub seed: u64,
}

impl RunConfig {
    pub fn from_command(command: &Command) -> CliResult<Self> {
        let (common, params) = match command {
            Command::Transform(a) => (&a.common, CommandParams::Transform),
            Command::Classify(a) => (&a.common, CommandParams::Classify),
            Command::Factorize(a) => (
                &a.common,
                CommandParams::Factorize {
                    supported: a.supported,
                    support_delta: a.support_delta,
                    pieces: a.pieces.unwrap_or_else(|| default_pieces(a.support_delta)),
                    bump_order: a.bump_order,
                    rep: a.rep.clone(),
                },
            ),
            Command::Verify(a) => (&a.common, CommandParams::Verify { inject_fault: a.inject_fault.clone() }),
        };
        Self::resolve(common, params)
    }

    fn resolve(common: &CommonArgs, params: CommandParams) -> CliResult<Self> {
        let config = RunConfig {
            params,
            group: common.group.clone(),
            bandlimit: common.bandlimit,
            weight: common.weight.parse()?,
            h: common.h,
            h_prime: common.h_prime.unwrap_or(2.0 * common.h),
            input: common.input.clone(),
            out: common.out.clone(),
            seed: common.seed,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> CliResult<()> {
        self.group_kind()?;
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(CliError::Usage(format!("--h {} must be a positive real", self.h)));
        }
        if !(self.h_prime > self.h) || !self.h_prime.is_finite() {
            return Err(CliError::Usage(format!("--h-prime {} must exceed --h {}", self.h_prime, self.h)));
        }
        if let Some(input) = &self.input {
            InputSource::parse(input)?;
        }
        if let CommandParams::Verify { inject_fault: Some(f) } = &self.params {
            if f != "conv-sign" {
                return Err(CliError::Usage(format!("unknown fault {f:?}")));
            }
        }
        Ok(())
    }

    pub fn group_kind(&self) -> CliResult<GroupKind> {
        Ok(self.group.parse()?)
    }

    pub fn input_source(&self) -> CliResult<InputSource> {
        let input = self.input.as_deref().ok_or_else(|| CliError::Usage("--input is required".into()))?;
        InputSource::parse(input)
    }

    pub fn out_path(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }

    pub fn out_dir(&self) -> &Path {
        &self.out
    }
}
