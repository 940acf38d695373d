use goldbach_grover::numtheory::NumTheoryError;
use goldbach_grover::goldbach_partitions;

use crate::args::OracleArgs;
use crate::error::CliError;

/// Largest number of evens a single `--from/--to` range may expand to.
const MAX_RANGE: u64 = 1_000_000;

fn evens(args: &OracleArgs) -> Result<Vec<u64>, CliError> {
    let mut out = args.numbers.clone();
    if let (Some(from), Some(to)) = (args.from, args.to) {
        if from > to {
            return Err(CliError::Usage(format!("empty range {from}..={to}")));
        }
        let first = from + from % 2;
        if (to - first) / 2 >= MAX_RANGE {
            return Err(CliError::Usage(format!("range holds more than {MAX_RANGE} evens")));
        }
        out.extend((first..=to).step_by(2));
    }
    if out.is_empty() {
        return Err(CliError::Usage("no numbers given".into()));
    }
    Ok(out)
}

pub fn run(args: &OracleArgs) -> Result<(), CliError> {
    let evens = evens(args)?;
    let mut unresolved = Vec::new();
    println!("{:>20}  {:>11}  partitions", "even", "first_prime");
    for n in evens {
        let report = goldbach_partitions(n, args.pmax).map_err(|e| match e {
            NumTheoryError::NotAnEvenAboveThree(v) => {
                CliError::Usage(format!("{v} is not an even number above 3"))
            }
            other => CliError::Usage(other.to_string()),
        })?;
        let first = report
            .first_prime
            .map_or_else(|| "-".to_string(), |p| p.to_string());
        let pairs = report
            .partitions
            .iter()
            .map(|(p, q)| format!("({p}, {q})"))
            .collect::<Vec<_>>()
            .join(" ");
        println!("{n:>20}  {first:>11}  {pairs}");
        if !report.is_resolved() {
            unresolved.push(n);
        }
    }
    if unresolved.is_empty() {
        Ok(())
    } else {
        Err(CliError::Unresolved(unresolved))
    }
}
