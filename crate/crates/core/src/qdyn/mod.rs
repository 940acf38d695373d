//! State-vector dynamics of the driven two-internal-state atom.
//!
//! Units: `ħ = U_0 = 1`, so energies are in `U_0` and times in `ħ/U_0`.
//! The ground manifold carries the shifted even ladder (computational
//! space), the excited manifold the shifted large-prime ladder (auxiliary
//! space). The simulation runs in the shifted lab frame with counter-rotating
//! terms retained; a rotating-wave frame is available for comparison.

mod evolve;
mod gates;
mod hamiltonian;
mod pulse;
mod state;
mod trace;

use thiserror::Error;

pub use evolve::{evolve, evolve_observed, Propagator};
pub use gates::{omega_pulse, s_gate, Gate, IdealOracle, IdealReflection, OmegaGate, SGate};
pub use hamiltonian::{hamiltonian_at, DriveHamiltonian, Hamiltonian, StaticHamiltonian};
pub use pulse::{DriveFrame, PulseConfig, SGateMode, DEFAULT_DT};
pub use state::{init_uniform, measure_populations, Populations, StateVector};
pub use trace::{trace_cycle, write_trace_csv, TraceRow};

/// Norm drift tolerated across one gate.
pub const NORM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QdynError {
    #[error("time step {dt} exceeds the resolvable maximum {max} for this Hamiltonian")]
    StepTooLarge { dt: f64, max: f64 },
    #[error("Hamiltonian is not Hermitian (max asymmetry {asymmetry:e})")]
    NonHermitian { asymmetry: f64 },
    #[error("norm drifted by {drift:e} during propagation")]
    NormDrift { drift: f64 },
    #[error("invalid pulse configuration: {0}")]
    InvalidPulse(String),
    #[error("state dimension {state} does not match Hamiltonian dimension {hamiltonian}")]
    DimensionMismatch { state: usize, hamiltonian: usize },
}
