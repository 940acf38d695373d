use std::io::Write;

use serde::Serialize;

use super::evolve::{check_norm, check_step, evolve_observed, step_grid, Propagator};
use super::hamiltonian::{DriveHamiltonian, Hamiltonian, StaticHamiltonian};
use super::pulse::{PulseConfig, SGateMode};
use super::state::StateVector;
use super::{Gate, IdealReflection, QdynError};
use crate::instance::GoldbachInstance;

/// One amplitude sample: `time,state_label,re,im`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRow {
    pub time: f64,
    pub state_label: String,
    pub re: f64,
    pub im: f64,
}

fn push_rows(rows: &mut Vec<TraceRow>, time: f64, state: &StateVector) {
    let g = state.g_amps().iter().enumerate().map(|(i, a)| (format!("g{}", i + 1), a));
    let e = state.e_amps().iter().enumerate().map(|(i, a)| (format!("e{}", i + 1), a));
    rows.extend(g.chain(e).map(|(state_label, a)| TraceRow {
        time,
        state_label,
        re: a.re,
        im: a.im,
    }));
}

/// Record every amplitude through one Grover cycle (oracle pulse, then
/// diffusion). Labels are 1-based: `g7` is the seventh even, `e2` the second
/// auxiliary prime.
///
/// The oracle pulse is sampled `samples_per_period` times per drive period.
/// The midpoint steps of one period are grouped into that many chunk
/// propagators, which are reused for every period; the physical diffusion
/// quench is sampled at every integrator step.
pub fn trace_cycle(
    instance: &GoldbachInstance,
    pulse: &PulseConfig,
    state: &StateVector,
    samples_per_period: usize,
) -> Result<(StateVector, Vec<TraceRow>), QdynError> {
    pulse.validate()?;
    let drive = DriveHamiltonian::new(instance, pulse);
    if state.dim() != drive.dim() {
        return Err(QdynError::DimensionMismatch {
            state: state.dim(),
            hamiltonian: drive.dim(),
        });
    }
    let mut rows = Vec::new();
    push_rows(&mut rows, 0.0, state);

    let period = drive.drive_period();
    let (n, h) = step_grid(period, pulse.dt);
    check_step(&drive, h)?;
    let chunk = n.div_ceil(samples_per_period.clamp(1, n));
    let chunks: Vec<(f64, Propagator)> = (0..n)
        .step_by(chunk)
        .map(|start| {
            let len = chunk.min(n - start);
            let u = Propagator::midpoint(&drive, start as f64 * h, h, len);
            ((start + len) as f64 * h, u)
        })
        .collect();
    let mut psi = state.clone();
    for k in 0..pulse.m as u64 * instance.p_drive() {
        let t0 = k as f64 * period;
        for (end, u) in &chunks {
            *psi.amplitudes_mut() = u.apply(psi.amplitudes());
            push_rows(&mut rows, t0 + end, &psi);
        }
    }
    check_norm(state.norm_sqr(), psi.norm_sqr())?;

    let t0 = pulse.tau_omega;
    let out = match pulse.s_gate_mode {
        SGateMode::Ideal => {
            let out = IdealReflection.apply(&psi)?;
            push_rows(&mut rows, t0, &out);
            out
        }
        SGateMode::Physical => {
            let quench = StaticHamiltonian::quench(instance, pulse.v_s);
            evolve_observed(&psi, &quench, pulse.tau_s, pulse.dt, |t, psi| {
                push_rows(&mut rows, t0 + t, psi)
            })?
        }
    };
    Ok((out, rows))
}

pub fn write_trace_csv<W: Write>(rows: &[TraceRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
