//! The searchable problem instance.
//!
//! A sample of consecutive evens forms the computational space, every large
//! prime that completes a Goldbach pair with some small prime forms the
//! auxiliary space, and the drive prime selects the single resonant pair.
//! Energies are kept as exact integers (units of `U_0`) relative to an offset
//! `C`, so the ~4e18-sized spectrum becomes a small integer ladder.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numtheory::{self, NumTheoryError};

/// Largest admissible `|level|` after shifting.
pub const MAX_LEVEL: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("invalid instance input: {0}")]
    InvalidInput(String),
    #[error("no even in the sample is partitioned by drive prime {p_drive}")]
    NoMatch { p_drive: u64 },
    #[error("drive prime {p_drive} partitions {} evens ({evens:?}); a single match is required", evens.len())]
    MultipleMatches { p_drive: u64, evens: Vec<u64> },
    #[error("level {level} exceeds the feasibility bound {MAX_LEVEL} at offset {offset}")]
    Infeasible { level: i128, offset: u64 },
    #[error("malformed instance document: {0}")]
    Document(String),
    #[error(transparent)]
    NumTheory(#[from] NumTheoryError),
}

/// Non-fatal: the sample is larger than `ln(base)`, so several evens are
/// likely to share a drive prime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSizeWarning {
    pub size: usize,
    pub bound: f64,
}

impl std::fmt::Display for SampleSizeWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "sample size {} exceeds ln(base) = {:.2}; single-match samples become unlikely",
            self.size, self.bound
        )
    }
}

/// Immutable problem instance. Indices are 0-based; the 1-based position
/// `n' = index + 1` is what gets printed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldbachInstance {
    base: u64,
    evens: Vec<u64>,
    p_drive: u64,
    aux_primes: Vec<u64>,
    energy_offset: u64,
    g_levels: Vec<i64>,
    e_levels: Vec<i64>,
    match_g_index: usize,
    match_e_index: usize,
}

/// Build the instance for the contiguous sample `base + 2, ..., base + 2 * count`.
pub fn build_instance(
    base: u64,
    count: usize,
    p_small_max: u64,
    p_drive: u64,
) -> Result<GoldbachInstance, InstanceError> {
    if !base.is_multiple_of(2) {
        return Err(InstanceError::InvalidInput(format!("base {base} is odd")));
    }
    if count < 2 {
        return Err(InstanceError::InvalidInput(format!(
            "sample size {count} < 2"
        )));
    }
    let evens = (1..=count as u64)
        .map(|k| base.checked_add(2 * k))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| InstanceError::InvalidInput("sample overflows u64".into()))?;
    GoldbachInstance::from_evens(base, evens, p_small_max, p_drive)
}

fn shifted(value: u64, offset: u64) -> Result<i64, InstanceError> {
    let level = value as i128 - offset as i128;
    if level.abs() > MAX_LEVEL as i128 {
        return Err(InstanceError::Infeasible { level, offset });
    }
    Ok(level as i64)
}

impl GoldbachInstance {
    /// Build an instance over an arbitrary ascending set of evens above `base`.
    ///
    /// The auxiliary table holds every prime `q = N - p` for `N` in the sample
    /// and odd primes `p <= p_small_max`, not just the partners of `p_drive`.
    pub fn from_evens(
        base: u64,
        evens: Vec<u64>,
        p_small_max: u64,
        p_drive: u64,
    ) -> Result<Self, InstanceError> {
        if evens.len() < 2 {
            return Err(InstanceError::InvalidInput(format!(
                "sample size {} < 2",
                evens.len()
            )));
        }
        check_evens(base, &evens)?;
        if p_drive < 3 || !numtheory::is_prime(p_drive) {
            return Err(InstanceError::InvalidInput(format!(
                "drive prime {p_drive} must be an odd prime"
            )));
        }
        if p_drive > p_small_max {
            return Err(InstanceError::InvalidInput(format!(
                "drive prime {p_drive} exceeds p_small_max {p_small_max}"
            )));
        }

        let small: Vec<u64> = numtheory::primes_up_to(p_small_max)?
            .into_iter()
            .filter(|&p| p >= 3)
            .collect();
        let mut aux_primes: Vec<u64> = evens
            .iter()
            .flat_map(|&n| small.iter().filter(move |&&p| p < n).map(move |&p| n - p))
            .filter(|&q| numtheory::is_prime(q))
            .collect();
        aux_primes.sort_unstable();
        aux_primes.dedup();

        let matched: Vec<usize> = (0..evens.len())
            .filter(|&i| evens[i] > p_drive && numtheory::is_prime(evens[i] - p_drive))
            .collect();
        let match_g_index = match matched.as_slice() {
            [] => return Err(InstanceError::NoMatch { p_drive }),
            [i] => *i,
            _ => {
                return Err(InstanceError::MultipleMatches {
                    p_drive,
                    evens: matched.iter().map(|&i| evens[i]).collect(),
                })
            }
        };
        let partner = evens[match_g_index] - p_drive;
        let match_e_index = aux_primes
            .binary_search(&partner)
            .expect("partner of the drive prime is in the auxiliary table");

        let mut inst = GoldbachInstance {
            base,
            evens,
            p_drive,
            aux_primes,
            energy_offset: base,
            g_levels: Vec::new(),
            e_levels: Vec::new(),
            match_g_index,
            match_e_index,
        };
        inst.set_levels(base)?;
        Ok(inst)
    }

    fn set_levels(&mut self, offset: u64) -> Result<(), InstanceError> {
        self.g_levels = self
            .evens
            .iter()
            .map(|&n| shifted(n, offset))
            .collect::<Result<_, _>>()?;
        self.e_levels = self
            .aux_primes
            .iter()
            .map(|&q| shifted(q, offset))
            .collect::<Result<_, _>>()?;
        self.energy_offset = offset;
        Ok(())
    }

    /// Re-base every level at offset `c`. A uniform shift is a global phase,
    /// so populations are unaffected.
    pub fn shift_energies(&self, c: u64) -> Result<Self, InstanceError> {
        let mut out = self.clone();
        out.set_levels(c)?;
        Ok(out)
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn evens(&self) -> &[u64] {
        &self.evens
    }

    /// Sample size 𝒩.
    pub fn size(&self) -> usize {
        self.evens.len()
    }

    pub fn p_drive(&self) -> u64 {
        self.p_drive
    }

    pub fn aux_primes(&self) -> &[u64] {
        &self.aux_primes
    }

    pub fn aux_count(&self) -> usize {
        self.aux_primes.len()
    }

    /// Total Hilbert-space dimension, computational plus auxiliary.
    pub fn dim(&self) -> usize {
        self.evens.len() + self.aux_primes.len()
    }

    pub fn energy_offset(&self) -> u64 {
        self.energy_offset
    }

    pub fn g_levels(&self) -> &[i64] {
        &self.g_levels
    }

    pub fn e_levels(&self) -> &[i64] {
        &self.e_levels
    }

    pub fn match_g_index(&self) -> usize {
        self.match_g_index
    }

    pub fn match_e_index(&self) -> usize {
        self.match_e_index
    }

    /// 1-based position of the matching even in the sample.
    pub fn match_position(&self) -> usize {
        self.match_g_index + 1
    }

    pub fn matching_even(&self) -> u64 {
        self.evens[self.match_g_index]
    }

    pub fn matching_partner(&self) -> u64 {
        self.aux_primes[self.match_e_index]
    }

    /// Integer detuning `(g_i - e_j) - p_drive`; zero only at the match.
    pub fn detuning(&self, g: usize, e: usize) -> i64 {
        self.g_levels[g] - self.e_levels[e] - self.p_drive as i64
    }

    pub fn sample_size_warning(&self) -> Option<SampleSizeWarning> {
        let bound = numtheory::prime_budget_typical(self.base.max(4) as f64);
        (self.size() as f64 > bound).then_some(SampleSizeWarning {
            size: self.size(),
            bound,
        })
    }

    /// Check every structural invariant. Used on deserialized documents.
    pub fn validate(&self) -> Result<(), InstanceError> {
        let bad = |msg: String| Err(InstanceError::Document(msg));
        if self.evens.len() < 2 {
            return bad("fewer than two evens".into());
        }
        check_evens(self.base, &self.evens)?;
        if !self.aux_primes.windows(2).all(|w| w[0] < w[1]) {
            return bad("aux primes not strictly ascending".into());
        }
        for &q in &self.aux_primes {
            if !numtheory::is_prime(q) {
                return bad(format!("aux entry {q} is not prime"));
            }
            if !self
                .evens
                .iter()
                .any(|&n| n > q && numtheory::is_prime(n - q))
            {
                return bad(format!("aux prime {q} completes no pair in the sample"));
            }
        }
        if self.p_drive < 3 || !numtheory::is_prime(self.p_drive) {
            return bad(format!("drive {} is not an odd prime", self.p_drive));
        }
        let mut expected = self.clone();
        expected.set_levels(self.energy_offset)?;
        if expected.g_levels != self.g_levels || expected.e_levels != self.e_levels {
            return bad("levels do not match evens/aux primes at the stated offset".into());
        }
        if self.match_g_index >= self.evens.len() || self.match_e_index >= self.aux_primes.len() {
            return bad("match index out of range".into());
        }
        let resonant: Vec<(usize, usize)> = (0..self.evens.len())
            .flat_map(|g| (0..self.aux_primes.len()).map(move |e| (g, e)))
            .filter(|&(g, e)| self.detuning(g, e) == 0)
            .collect();
        if resonant != [(self.match_g_index, self.match_e_index)] {
            return bad(format!("resonant pairs {resonant:?} do not equal the stated match"));
        }
        Ok(())
    }

    pub fn to_document(&self) -> InstanceDocument {
        let dec = |v: &[u64]| v.iter().map(u64::to_string).collect();
        let sdec = |v: &[i64]| v.iter().map(i64::to_string).collect();
        InstanceDocument {
            base: self.base.to_string(),
            evens: dec(&self.evens),
            size: self.size().to_string(),
            p_drive: self.p_drive.to_string(),
            aux_primes: dec(&self.aux_primes),
            energy_offset: self.energy_offset.to_string(),
            g_levels: sdec(&self.g_levels),
            e_levels: sdec(&self.e_levels),
            match_g_index: self.match_g_index.to_string(),
            match_e_index: self.match_e_index.to_string(),
        }
    }

    pub fn from_document(doc: &InstanceDocument) -> Result<Self, InstanceError> {
        fn num<T: std::str::FromStr>(field: &str, s: &str) -> Result<T, InstanceError> {
            s.parse()
                .map_err(|_| InstanceError::Document(format!("{field}: cannot parse {s:?}")))
        }
        fn nums<T: std::str::FromStr>(field: &str, v: &[String]) -> Result<Vec<T>, InstanceError> {
            v.iter().map(|s| num(field, s)).collect()
        }
        let inst = GoldbachInstance {
            base: num("base", &doc.base)?,
            evens: nums("evens", &doc.evens)?,
            p_drive: num("p_drive", &doc.p_drive)?,
            aux_primes: nums("aux_primes", &doc.aux_primes)?,
            energy_offset: num("energy_offset", &doc.energy_offset)?,
            g_levels: nums("g_levels", &doc.g_levels)?,
            e_levels: nums("e_levels", &doc.e_levels)?,
            match_g_index: num("match_g_index", &doc.match_g_index)?,
            match_e_index: num("match_e_index", &doc.match_e_index)?,
        };
        let size: usize = num("size", &doc.size)?;
        if size != inst.evens.len() {
            return Err(InstanceError::Document(format!(
                "size {size} disagrees with {} evens",
                inst.evens.len()
            )));
        }
        inst.validate()?;
        Ok(inst)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        let doc: InstanceDocument =
            serde_json::from_str(text).map_err(|e| InstanceError::Document(e.to_string()))?;
        Self::from_document(&doc)
    }
}

fn check_evens(base: u64, evens: &[u64]) -> Result<(), InstanceError> {
    if let Some(&n) = evens.iter().find(|&&n| n % 2 != 0 || n <= base) {
        return Err(InstanceError::InvalidInput(format!(
            "{n} is not an even above base {base}"
        )));
    }
    if !evens.windows(2).all(|w| w[0] < w[1]) {
        return Err(InstanceError::InvalidInput(
            "evens must be strictly ascending".into(),
        ));
    }
    Ok(())
}

/// On-disk form of [`GoldbachInstance`]; every integer is a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDocument {
    pub base: String,
    pub evens: Vec<String>,
    pub size: String,
    pub p_drive: String,
    pub aux_primes: Vec<String>,
    pub energy_offset: String,
    pub g_levels: Vec<String>,
    pub e_levels: Vec<String>,
    pub match_g_index: String,
    pub match_e_index: String,
}
