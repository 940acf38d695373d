use goldbach_grover::GoldbachInstance;

use super::{instance_from_config, write_text};
use crate::args::BuildArgs;
use crate::config::{RunConfig, DEFAULT_PDRIVE};
use crate::error::CliError;

pub fn run(args: &BuildArgs) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(&args.common, Some(DEFAULT_PDRIVE), 2)?;
    let inst = instance_from_config(&cfg)?;
    let path = cfg.output(".instance.json");
    write_text(&path, &inst.to_json())?;
    print_summary(&inst);
    println!("wrote {}", path.display());
    Ok(())
}

pub fn print_summary(inst: &GoldbachInstance) {
    println!(
        "sample: {} evens, {} ... {}",
        inst.size(),
        inst.evens()[0],
        inst.evens()[inst.size() - 1]
    );
    println!("drive prime: {}", inst.p_drive());
    println!("auxiliary primes ({}):", inst.aux_count());
    for (q, level) in inst.aux_primes().iter().zip(inst.e_levels()) {
        println!("  {q}  (level {level:+})");
    }
    println!(
        "match: n' = {}, even {} = {} + {}",
        inst.match_position(),
        inst.matching_even(),
        inst.p_drive(),
        inst.matching_partner()
    );
    if let Some(w) = inst.sample_size_warning() {
        eprintln!("warning: {w}");
    }
}
