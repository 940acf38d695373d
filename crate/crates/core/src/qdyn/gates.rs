//! Physical and ideal realizations of the two Grover reflections.
//!
//! The oracle pulse lasts `tau_omega = 2πM`, which is exactly `M·p` periods
//! of the drive. Because the drive clock restarts with every pulse, the pulse
//! propagator is the one-period midpoint product raised to the power `M·p`;
//! that is the same unitary step-by-step integration produces on a grid
//! aligned with the drive period, and it is computed once per configuration.

use num_complex::Complex64;

use super::evolve::{check_norm, check_step, step_grid, Propagator};
use super::hamiltonian::{DriveHamiltonian, Hamiltonian, StaticHamiltonian};
use super::pulse::{DriveFrame, PulseConfig, SGateMode};
use super::state::StateVector;
use super::{QdynError, NORM_TOLERANCE};
use crate::instance::GoldbachInstance;

pub trait Gate: Sync {
    fn apply(&self, state: &StateVector) -> Result<StateVector, QdynError>;
}

fn apply_propagator(u: &Propagator, state: &StateVector) -> Result<StateVector, QdynError> {
    if u.dim() != state.dim() {
        return Err(QdynError::DimensionMismatch {
            state: state.dim(),
            hamiltonian: u.dim(),
        });
    }
    let out = StateVector::from_parts(u.apply(state.amplitudes()), state.n_g());
    check_norm(state.norm_sqr(), out.norm_sqr())?;
    Ok(out)
}

fn check_unitary(u: &Propagator) -> Result<(), QdynError> {
    let defect = u.unitarity_defect();
    if defect > NORM_TOLERANCE {
        return Err(QdynError::NormDrift { drift: defect });
    }
    Ok(())
}

/// Resonant 2π pulse realizing the oracle reflection.
#[derive(Debug, Clone)]
pub struct OmegaGate {
    propagator: Propagator,
}

impl OmegaGate {
    pub fn new(instance: &GoldbachInstance, pulse: &PulseConfig) -> Result<Self, QdynError> {
        pulse.validate()?;
        let h = DriveHamiltonian::new(instance, pulse);
        let propagator = match pulse.frame {
            DriveFrame::Lab => {
                let (steps, step) = step_grid(h.drive_period(), pulse.dt);
                check_step(&h, step)?;
                let periods = pulse.m as u64 * instance.p_drive();
                Propagator::midpoint(&h, 0.0, step, steps).pow(periods)
            }
            // the rotating frame coincides with the lab frame after M·p periods
            DriveFrame::Rwa => Propagator::exp_symmetric(&h.at(0.0), pulse.tau_omega),
        };
        check_unitary(&propagator)?;
        Ok(OmegaGate { propagator })
    }

    pub fn propagator(&self) -> &Propagator {
        &self.propagator
    }
}

impl Gate for OmegaGate {
    fn apply(&self, state: &StateVector) -> Result<StateVector, QdynError> {
        apply_propagator(&self.propagator, state)
    }
}

/// Diffusion step, ideal or as a strong projector quench.
#[derive(Debug, Clone)]
pub enum SGate {
    Ideal,
    Physical(Propagator),
}

impl SGate {
    pub fn new(instance: &GoldbachInstance, pulse: &PulseConfig) -> Result<Self, QdynError> {
        pulse.validate()?;
        if pulse.size() != instance.size() {
            return Err(QdynError::InvalidPulse(format!(
                "pulse built for {} states, instance has {}",
                pulse.size(),
                instance.size()
            )));
        }
        Ok(match pulse.s_gate_mode {
            SGateMode::Ideal => SGate::Ideal,
            SGateMode::Physical => {
                let h = StaticHamiltonian::quench(instance, pulse.v_s);
                let u = Propagator::exp_symmetric(h.matrix(), pulse.tau_s);
                check_unitary(&u)?;
                SGate::Physical(u)
            }
        })
    }
}

impl Gate for SGate {
    fn apply(&self, state: &StateVector) -> Result<StateVector, QdynError> {
        match self {
            SGate::Ideal => IdealReflection.apply(state),
            SGate::Physical(u) => apply_propagator(u, state),
        }
    }
}

/// `1 - 2|s><s|` on the computational block, identity on the auxiliary one.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdealReflection;

impl Gate for IdealReflection {
    fn apply(&self, state: &StateVector) -> Result<StateVector, QdynError> {
        let n = state.n_g();
        let mean: Complex64 = state.g_amps().iter().sum::<Complex64>() / n as f64;
        let mut out = state.clone();
        for a in out.amplitudes_mut().rows_mut(0, n).iter_mut() {
            *a -= 2.0 * mean;
        }
        Ok(out)
    }
}

/// Exact oracle: sign flip of one computational amplitude.
#[derive(Debug, Clone, Copy)]
pub struct IdealOracle {
    pub index: usize,
}

impl Gate for IdealOracle {
    fn apply(&self, state: &StateVector) -> Result<StateVector, QdynError> {
        let mut out = state.clone();
        out.amplitudes_mut()[self.index] *= -1.0;
        Ok(out)
    }
}

/// Apply one oracle pulse, drive clock starting at zero.
pub fn omega_pulse(
    state: &StateVector,
    instance: &GoldbachInstance,
    pulse: &PulseConfig,
) -> Result<StateVector, QdynError> {
    OmegaGate::new(instance, pulse)?.apply(state)
}

/// Apply one diffusion step in the mode selected by `pulse`.
pub fn s_gate(
    state: &StateVector,
    instance: &GoldbachInstance,
    pulse: &PulseConfig,
) -> Result<StateVector, QdynError> {
    SGate::new(instance, pulse)?.apply(state)
}
