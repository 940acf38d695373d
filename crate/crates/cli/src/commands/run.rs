use goldbach_grover::protocol::GroverRunRecord;
use goldbach_grover::qdyn::{init_uniform, trace_cycle, write_trace_csv};
use goldbach_grover::{optimal_iterations, run_physical, GoldbachInstance};

use super::{load_or_build, pulse_for, verify_partition, write_with};
use crate::args::RunArgs;
use crate::config::{RunConfig, DEFAULT_PDRIVE};
use crate::error::CliError;

pub fn run(args: &RunArgs) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(&args.common, Some(DEFAULT_PDRIVE), 2)?;
    let inst = load_or_build(args.instance.as_deref(), &cfg)?;
    if let Some(w) = inst.sample_size_warning() {
        eprintln!("warning: {w}");
    }
    let pulse = pulse_for(&cfg, inst.size())?;
    let r = cfg.iterations.unwrap_or_else(|| optimal_iterations(inst.size()));
    let mode = cfg.mode_name();

    println!(
        "{} evens from {}, drive prime {}, M = {}, v_s = {}, dt = {}, {} diffusion, {} cycles",
        inst.size(),
        inst.evens()[0],
        inst.p_drive(),
        cfg.m,
        cfg.v_s,
        cfg.dt,
        mode,
        r
    );
    let record = run_physical(&inst, &pulse, r)?;
    let path = cfg.output(&format!(".{mode}.snapshots.csv"));
    write_with(&path, |w| record.write_csv(w))?;
    print_snapshots(&record);
    println!("wrote {}", path.display());

    if args.trace {
        let (_, rows) = trace_cycle(&inst, &pulse, &init_uniform(&inst), args.trace_samples)?;
        let path = cfg.output(&format!(".{mode}.trace.csv"));
        write_with(&path, |w| write_trace_csv(&rows, w))?;
        println!("wrote {} ({} rows)", path.display(), rows.len());
    }

    if r == 0 {
        println!("no cycles run; nothing detected");
        return Ok(());
    }
    announce(&inst, &record, args.inject_fault)
}

fn print_snapshots(record: &GroverRunRecord) {
    println!(
        "{:>9}  {:>10}  {:>10}  {:>10}  {:>10}",
        "iteration", "target", "rest", "aux", "theory"
    );
    for (s, t) in record.snapshots.iter().zip(&record.theory) {
        println!(
            "{:>9}  {:>10.6}  {:>10.6}  {:>10.6}  {:>10.6}",
            s.iteration, s.target_pop, s.rest_pop, s.aux_pop, t
        );
    }
}

/// Report the detected even and its partition, but only after both members
/// pass the primality oracle.
fn announce(
    inst: &GoldbachInstance,
    record: &GroverRunRecord,
    inject_fault: bool,
) -> Result<(), CliError> {
    let mut index = record.detected_index;
    if inject_fault {
        // a neighbouring even is never partitioned by the drive prime
        index = (index + 1) % inst.size();
    }
    let even = inst.evens()[index];
    let p = inst.p_drive();
    let q = even.checked_sub(p).ok_or_else(|| {
        CliError::Verification(format!("drive prime {p} exceeds detected even {even}"))
    })?;
    verify_partition(even, p, q)?;
    println!(
        "detected n' = {}: {} = {} + {} (both prime, verified)",
        index + 1,
        even,
        p,
        q
    );
    Ok(())
}
