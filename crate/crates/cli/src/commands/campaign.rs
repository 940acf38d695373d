//! Ascending-prime sieve over a sample of evens. Each drive prime removes the
//! evens it partitions; when it partitions exactly one of at least two
//! remaining evens, the removal goes through the simulated Grover search.

use serde::Serialize;

use goldbach_grover::numtheory::{prime_budget_exceptional, primes_up_to};
use goldbach_grover::{is_prime, optimal_iterations, run_physical, GoldbachInstance};

use super::{pulse_for, verify_partition, write_with};
use crate::args::CampaignArgs;
use crate::config::RunConfig;
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Simulated,
    Classical,
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Resolution {
    pub even: u64,
    pub prime: Option<u64>,
    pub partner: Option<u64>,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignReport {
    /// One row per even, ascending.
    pub rows: Vec<Resolution>,
    pub primes_tried: usize,
    pub survivors: Vec<u64>,
}

/// `ceil(ln^2 N)` for the largest even, at least one prime.
fn prime_budget(evens: &[u64]) -> usize {
    let top = evens.last().copied().unwrap_or(4).max(4);
    (prime_budget_exceptional(top as f64).ceil() as usize).max(1)
}

fn partitions_with(n: u64, p: u64) -> bool {
    if p == 2 {
        n == 4
    } else {
        n > p && is_prime(n - p)
    }
}

/// Grover search for the single even in `remaining` partitioned by `p`.
fn simulate(cfg: &RunConfig, remaining: &[u64], p: u64) -> Result<u64, CliError> {
    let pmax = cfg.p_small_max.max(p);
    let inst = GoldbachInstance::from_evens(cfg.base, remaining.to_vec(), pmax, p)?;
    let pulse = pulse_for(cfg, inst.size())?;
    let r = cfg
        .iterations
        .unwrap_or_else(|| optimal_iterations(inst.size()))
        .max(1);
    let record = run_physical(&inst, &pulse, r)?;
    let even = inst.evens()[record.detected_index];
    verify_partition(even, p, even.saturating_sub(p))?;
    Ok(even)
}

pub fn sieve_campaign(cfg: &RunConfig, evens: &[u64]) -> Result<CampaignReport, CliError> {
    let primes =
        primes_up_to(cfg.p_small_max).map_err(|e| CliError::Usage(e.to_string()))?;
    let budget = prime_budget(evens);
    let mut remaining = evens.to_vec();
    let mut rows = Vec::new();
    let mut tried = 0;
    for &p in primes.iter().take(budget) {
        if remaining.is_empty() {
            break;
        }
        tried += 1;
        let hits: Vec<u64> = remaining
            .iter()
            .copied()
            .filter(|&n| partitions_with(n, p))
            .collect();
        if hits.is_empty() {
            continue;
        }
        let method = if hits.len() == 1 && remaining.len() >= 2 && p > 2 {
            let found = simulate(cfg, &remaining, p)?;
            if found != hits[0] {
                return Err(CliError::Verification(format!(
                    "simulation detected {found}, classical oracle expects {}",
                    hits[0]
                )));
            }
            Method::Simulated
        } else {
            Method::Classical
        };
        println!(
            "p = {p}: {} of {} remaining partitioned ({})",
            hits.len(),
            remaining.len(),
            if method == Method::Simulated { "simulated" } else { "classical only" }
        );
        for &n in &hits {
            rows.push(Resolution {
                even: n,
                prime: Some(p),
                partner: Some(n - p),
                method,
            });
        }
        remaining.retain(|n| !hits.contains(n));
    }
    rows.extend(remaining.iter().map(|&n| Resolution {
        even: n,
        prime: None,
        partner: None,
        method: Method::Unresolved,
    }));
    rows.sort_by_key(|r| r.even);
    Ok(CampaignReport {
        rows,
        primes_tried: tried,
        survivors: remaining,
    })
}

pub fn run(args: &CampaignArgs) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(&args.common, None, 0)?;
    let evens = (1..=cfg.count as u64)
        .map(|k| cfg.base.checked_add(2 * k))
        .collect::<Option<Vec<u64>>>()
        .ok_or_else(|| CliError::Usage("sample exceeds the 64-bit range".into()))?;
    if cfg.base % 2 != 0 {
        return Err(CliError::Usage(format!("base {} is odd", cfg.base)));
    }
    let report = sieve_campaign(&cfg, &evens)?;
    let path = cfg.output(".campaign.csv");
    write_with(&path, |w| {
        let mut csv = csv::WriterBuilder::new().has_headers(false).from_writer(w);
        csv.write_record(["even", "prime", "partner", "method"])?;
        for row in &report.rows {
            csv.serialize(row)?;
        }
        csv.flush()?;
        Ok(())
    })?;
    println!("{:>20}  {:>6}  {:>20}  method", "even", "prime", "partner");
    for r in &report.rows {
        let show = |v: Option<u64>| v.map_or_else(|| "-".into(), |x| x.to_string());
        println!(
            "{:>20}  {:>6}  {:>20}  {}",
            r.even,
            show(r.prime),
            show(r.partner),
            match r.method {
                Method::Simulated => "simulated",
                Method::Classical => "classical",
                Method::Unresolved => "unresolved",
            }
        );
    }
    println!("{} primes tried; wrote {}", report.primes_tried, path.display());
    if report.survivors.is_empty() {
        Ok(())
    } else {
        Err(CliError::BudgetExhausted {
            tried: report.primes_tried,
            survivors: report.survivors,
        })
    }
}
