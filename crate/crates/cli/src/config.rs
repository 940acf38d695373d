use std::path::{Path, PathBuf};

use goldbach_grover::qdyn::DEFAULT_DT;
use goldbach_grover::{is_prime, SGateMode, RECORD_BASE};
use serde::Deserialize;

use crate::args::{CommonArgs, SGateArg};
use crate::error::CliError;

pub const DEFAULT_COUNT: usize = 51;
pub const DEFAULT_PMAX: u64 = 307;
pub const DEFAULT_PDRIVE: u64 = 223;
pub const DEFAULT_M: u32 = 3;
pub const DEFAULT_VS: f64 = 100.0;
pub const DEFAULT_OUT: &str = "goldbach";

/// An integer that may be written as a TOML integer or, above the signed
/// 64-bit range, as a decimal string.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Wide {
    Int(u64),
    Text(String),
}

impl Wide {
    fn value(&self) -> Result<u64, CliError> {
        match self {
            Wide::Int(v) => Ok(*v),
            Wide::Text(s) => s
                .parse()
                .map_err(|_| CliError::Usage(format!("config: {s:?} is not an unsigned integer"))),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    base: Option<Wide>,
    count: Option<usize>,
    pmax: Option<u64>,
    pdrive: Option<u64>,
    #[serde(rename = "M")]
    m: Option<u32>,
    vs: Option<f64>,
    dt: Option<f64>,
    sgate: Option<SGateArg>,
    iters: Option<usize>,
    out: Option<PathBuf>,
}

fn load(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub base: u64,
    pub count: usize,
    pub p_small_max: u64,
    /// Absent means a campaign over ascending small primes.
    pub p_drive: Option<u64>,
    pub m: u32,
    pub v_s: f64,
    pub dt: f64,
    pub s_gate_mode: SGateMode,
    /// Absent means the optimal cycle count.
    pub iterations: Option<usize>,
    pub out: PathBuf,
}

impl RunConfig {
    /// Merge flags over the config file over defaults. `p_drive_default` is
    /// `None` for campaigns, which choose drive primes themselves.
    pub fn resolve(
        args: &CommonArgs,
        p_drive_default: Option<u64>,
        min_count: usize,
    ) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(path) => load(path)?,
            None => FileConfig::default(),
        };
        let base = match (args.base, &file.base) {
            (Some(b), _) => b,
            (None, Some(w)) => w.value()?,
            (None, None) => RECORD_BASE,
        };
        let p_drive = match p_drive_default {
            Some(d) => Some(args.pdrive.or(file.pdrive).unwrap_or(d)),
            None if args.pdrive.is_some() => {
                return Err(CliError::Usage(
                    "campaign chooses its drive primes; --pdrive is not accepted".into(),
                ))
            }
            None => None,
        };
        let sgate = args.sgate.or(file.sgate).unwrap_or(SGateArg::Physical);
        let cfg = RunConfig {
            base,
            count: args.count.or(file.count).unwrap_or(DEFAULT_COUNT),
            p_small_max: args.pmax.or(file.pmax).unwrap_or(DEFAULT_PMAX),
            p_drive,
            m: args.m.or(file.m).unwrap_or(DEFAULT_M),
            v_s: args.vs.or(file.vs).unwrap_or(DEFAULT_VS),
            dt: args.dt.or(file.dt).unwrap_or(DEFAULT_DT),
            s_gate_mode: match sgate {
                SGateArg::Ideal => SGateMode::Ideal,
                SGateArg::Physical => SGateMode::Physical,
            },
            iterations: args.iters.or(file.iters),
            out: args
                .out
                .clone()
                .or(file.out)
                .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT)),
        };
        cfg.check(min_count)?;
        Ok(cfg)
    }

    fn check(&self, min_count: usize) -> Result<(), CliError> {
        let usage = |m: String| Err(CliError::Usage(m));
        if self.count < min_count {
            return usage(format!("count must be at least {min_count}, got {}", self.count));
        }
        if self.p_small_max < 2 {
            return usage(format!("pmax must be at least 2, got {}", self.p_small_max));
        }
        if let Some(p) = self.p_drive {
            if !is_prime(p) {
                return usage(format!("drive {p} is not prime"));
            }
        }
        if self.m == 0 {
            return usage("M must be positive".into());
        }
        if !(self.v_s > 0.0 && self.v_s.is_finite()) {
            return usage(format!("vs must be positive, got {}", self.v_s));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return usage(format!("dt must be positive, got {}", self.dt));
        }
        Ok(())
    }

    /// `{out}{suffix}`, e.g. `run1` + `.instance.json`.
    pub fn output(&self, suffix: &str) -> PathBuf {
        let mut name = self.out.clone().into_os_string();
        name.push(suffix);
        PathBuf::from(name)
    }

    pub fn mode_name(&self) -> &'static str {
        match self.s_gate_mode {
            SGateMode::Ideal => "ideal",
            SGateMode::Physical => "physical",
        }
    }
}
