pub mod build;
pub mod campaign;
pub mod oracle;
pub mod run;
pub mod sweep;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use goldbach_grover::{build_instance, is_prime, GoldbachInstance, PulseConfig};

use crate::args::Command;
use crate::config::RunConfig;
use crate::error::CliError;

pub fn dispatch(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Oracle(a) => oracle::run(a),
        Command::Build(a) => build::run(a),
        Command::Run(a) => run::run(a),
        Command::Campaign(a) => campaign::run(a),
        Command::Sweep(a) => sweep::run(a),
    }
}

pub(crate) fn instance_from_config(cfg: &RunConfig) -> Result<GoldbachInstance, CliError> {
    let p_drive = cfg.p_drive.expect("simulation commands always have a drive prime");
    Ok(build_instance(cfg.base, cfg.count, cfg.p_small_max, p_drive)?)
}

/// Instance from `--instance` when given, otherwise built from the config.
pub(crate) fn load_or_build(
    path: Option<&Path>,
    cfg: &RunConfig,
) -> Result<GoldbachInstance, CliError> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
            Ok(GoldbachInstance::from_json(&text)?)
        }
        None => instance_from_config(cfg),
    }
}

pub(crate) fn pulse_for(cfg: &RunConfig, size: usize) -> Result<PulseConfig, CliError> {
    Ok(PulseConfig::new(cfg.m, cfg.v_s, size)?
        .with_dt(cfg.dt)?
        .with_s_gate_mode(cfg.s_gate_mode))
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Create `path` and hand a buffered writer to `fill`.
pub(crate) fn write_with<F>(path: &Path, fill: F) -> Result<(), CliError>
where
    F: FnOnce(&mut BufWriter<File>) -> csv::Result<()>,
{
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = BufWriter::new(file);
    fill(&mut w).map_err(|e| CliError::io(path, std::io::Error::other(e)))?;
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Final classical check on a partition the simulation announces.
pub(crate) fn verify_partition(even: u64, p: u64, q: u64) -> Result<(), CliError> {
    if p.checked_add(q) != Some(even) {
        return Err(CliError::Verification(format!("{p} + {q} != {even}")));
    }
    for x in [p, q] {
        if !is_prime(x) {
            return Err(CliError::Verification(format!(
                "{even} = {p} + {q}, but {x} is not prime"
            )));
        }
    }
    Ok(())
}
