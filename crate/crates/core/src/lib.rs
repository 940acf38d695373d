//! Analogue Grover search for Goldbach partitions.
//!
//! A single atom with two internal states is trapped in potentials whose
//! spectra encode a sample of large evens (ground manifold) and a table of
//! large primes (excited manifold). A drive at the frequency of a small prime
//! `p` is resonant only for the pair `N - q = p`, so a 2π pulse marks the even
//! that `p` partitions; a strong projector quench supplies the diffusion
//! step. This crate builds such instances from exact number theory,
//! simulates the pulse sequence and checks it against the exact reflections,
//! the closed-form Grover curve and a classical primality oracle.

pub mod instance;
pub mod numtheory;
pub mod protocol;
pub mod qdyn;

pub use instance::{build_instance, GoldbachInstance, InstanceError};
pub use numtheory::{classical_sieve, goldbach_partitions, is_prime, primes_up_to, PartitionReport};
pub use protocol::{
    ideal_unitaries, optimal_iterations, run_ideal, run_physical, sweep_pulse_params,
    theory_success, GroverRunRecord,
};
pub use qdyn::{PulseConfig, QdynError, SGateMode, StateVector};

/// Largest even verified against the conjecture at the time of writing; the
/// default sample starts just above it.
pub const RECORD_BASE: u64 = 4_000_000_000_000_000_000;
