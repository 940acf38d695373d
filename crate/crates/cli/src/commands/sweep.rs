use goldbach_grover::protocol::write_sweep_csv;
use goldbach_grover::sweep_pulse_params;

use super::{load_or_build, pulse_for, write_with};
use crate::args::SweepArgs;
use crate::config::{RunConfig, DEFAULT_PDRIVE};
use crate::error::CliError;

pub fn run(args: &SweepArgs) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(&args.common, Some(DEFAULT_PDRIVE), 2)?;
    if args.ms.is_empty() || args.vss.is_empty() || args.ms.contains(&0) {
        return Err(CliError::Usage("sweep grids must be non-empty with M >= 1".into()));
    }
    let inst = load_or_build(args.instance.as_deref(), &cfg)?;
    let template = pulse_for(&cfg, inst.size())?;
    let rows = sweep_pulse_params(&inst, &args.ms, &args.vss, &template)?;
    let path = cfg.output(".sweep.csv");
    write_with(&path, |w| write_sweep_csv(&rows, w))?;
    println!("{:>4}  {:>8}  {:>5}  {:>10}", "M", "v_s", "r_opt", "target_pop");
    for row in &rows {
        let mark = if row.m == cfg.m && row.v_s == cfg.v_s { "  *" } else { "" };
        println!(
            "{:>4}  {:>8}  {:>5}  {:>10.6}{mark}",
            row.m, row.v_s, row.r_opt, row.target_pop
        );
    }
    println!("wrote {}", path.display());
    Ok(())
}
