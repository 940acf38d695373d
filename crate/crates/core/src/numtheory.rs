//! Classical number-theory oracle.
//!
//! Deterministic 64-bit primality, a plain sieve of Eratosthenes, Goldbach
//! partitions of a single even and the ascending-prime sieve that resolves a
//! batch of evens. Everything here is pure and safe to call concurrently.

use std::collections::BTreeMap;

use thiserror::Error;

/// Miller–Rabin bases that decide primality for every `n < 2^64`.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Largest bound accepted by [`primes_up_to`].
pub const SIEVE_CAPACITY: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumTheoryError {
    #[error("{0} is not an even number >= 4")]
    NotAnEvenAboveThree(u64),
    #[error("sieve bound {bound} exceeds capacity {capacity}")]
    CapacityExceeded { bound: u64, capacity: u64 },
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Strong probable-prime test of odd `n` to base `a`, with `n - 1 = d * 2^s`.
fn is_strong_probable_prime(n: u64, a: u64, d: u64, s: u32) -> bool {
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality test for the full `u64` range.
///
/// Trial division by the witness primes handles everything below `41^2`;
/// larger inputs go through Miller–Rabin with the 12 bases up to 37, which
/// has no strong pseudoprimes below `3.3 * 10^24`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    // a composite with no factor <= 37 is at least 41^2
    if n < 41 * 41 {
        return true;
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    MR_WITNESSES
        .iter()
        .all(|&a| is_strong_probable_prime(n, a, d, s))
}

/// All primes `<= bound`, ascending.
pub fn primes_up_to(bound: u64) -> Result<Vec<u64>, NumTheoryError> {
    if bound > SIEVE_CAPACITY {
        return Err(NumTheoryError::CapacityExceeded {
            bound,
            capacity: SIEVE_CAPACITY,
        });
    }
    if bound < 2 {
        return Ok(Vec::new());
    }
    // odd-only table: index i stands for 2i + 1
    let half = (bound as usize - 1) / 2 + 1;
    let mut composite = vec![false; half];
    composite[0] = true;
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= bound as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = Vec::with_capacity(estimated_prime_count(bound));
    primes.push(2);
    primes.extend(
        composite
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(i, _)| 2 * i as u64 + 1),
    );
    Ok(primes)
}

fn estimated_prime_count(bound: u64) -> usize {
    let x = bound.max(3) as f64;
    (1.3 * x / x.ln()) as usize + 8
}

/// Goldbach partitions of one even number, restricted to small primes
/// `<= p_small_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionReport {
    pub even: u64,
    /// `(p_small, p_large)` with `p_small <= p_large`, ascending by `p_small`.
    pub partitions: Vec<(u64, u64)>,
    /// Smallest `p_small` found, if any.
    pub first_prime: Option<u64>,
}

impl PartitionReport {
    pub fn is_resolved(&self) -> bool {
        self.first_prime.is_some()
    }
}

fn check_even(n: u64) -> Result<(), NumTheoryError> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(NumTheoryError::NotAnEvenAboveThree(n));
    }
    Ok(())
}

/// Every pair `(p, even - p)` of primes with `p <= min(p_small_max, even / 2)`.
///
/// `p = 2` only ever partitions `4`; it is handled explicitly rather than by
/// testing `even - 2`.
pub fn goldbach_partitions(even: u64, p_small_max: u64) -> Result<PartitionReport, NumTheoryError> {
    check_even(even)?;
    let limit = p_small_max.min(even / 2);
    let partitions: Vec<(u64, u64)> = primes_up_to(limit)?
        .into_iter()
        .filter(|&p| if p == 2 { even == 4 } else { is_prime(even - p) })
        .map(|p| (p, even - p))
        .collect();
    let first_prime = partitions.first().map(|&(p, _)| p);
    Ok(PartitionReport {
        even,
        partitions,
        first_prime,
    })
}

/// Outcome of the ascending-prime sieve for one even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SieveOutcome {
    /// Smallest prime `p` with `even - p` prime.
    Resolved(u64),
    /// No partitioning prime up to the budget.
    Unresolved,
}

impl SieveOutcome {
    pub fn prime(self) -> Option<u64> {
        match self {
            SieveOutcome::Resolved(p) => Some(p),
            SieveOutcome::Unresolved => None,
        }
    }
}

/// Sieve a batch of evens with ascending small primes, stopping at
/// `p_small_max`. Unresolved evens stay in the map.
pub fn classical_sieve(
    evens: &[u64],
    p_small_max: u64,
) -> Result<BTreeMap<u64, SieveOutcome>, NumTheoryError> {
    for &n in evens {
        check_even(n)?;
    }
    let primes = primes_up_to(p_small_max)?;
    Ok(evens
        .iter()
        .map(|&n| (n, first_partitioning_prime(n, &primes)))
        .collect())
}

fn first_partitioning_prime(even: u64, primes: &[u64]) -> SieveOutcome {
    if even == 4 {
        return match primes.first() {
            Some(2) => SieveOutcome::Resolved(2),
            _ => SieveOutcome::Unresolved,
        };
    }
    primes
        .iter()
        .skip_while(|&&p| p == 2)
        .take_while(|&&p| p <= even / 2)
        .find(|&&p| is_prime(even - p))
        .map_or(SieveOutcome::Unresolved, |&p| SieveOutcome::Resolved(p))
}

/// Typical number of small primes to try before a large even is resolved: `ln N`.
pub fn prime_budget_typical(n: f64) -> f64 {
    n.ln()
}

/// Budget for the rare evens with unusually large Goldbach primes: `ln^2 N`.
pub fn prime_budget_exceptional(n: f64) -> f64 {
    let l = n.ln();
    l * l
}
