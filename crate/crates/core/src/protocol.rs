//! Grover orchestration.
//!
//! Each cycle applies the oracle reflection and then the diffusion
//! reflection, `ψ <- U_s U_ω ψ`, starting from `|s>`. The same driver runs
//! the exact reflections (reference) and the pulse realizations.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::io::Write;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::instance::GoldbachInstance;
use crate::qdyn::{
    init_uniform, measure_populations, Gate, IdealOracle, IdealReflection, OmegaGate, PulseConfig,
    QdynError, SGate, StateVector,
};

/// Populations after a given number of completed cycles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Snapshot {
    pub iteration: usize,
    pub target_pop: f64,
    pub rest_pop: f64,
    pub aux_pop: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroverRunRecord {
    pub iterations: usize,
    /// `iterations + 1` entries, the first being the initial state.
    pub snapshots: Vec<Snapshot>,
    /// Closed-form target population for each snapshot.
    pub theory: Vec<f64>,
    /// Most probable computational state at the end (0-based).
    pub detected_index: usize,
    pub success: bool,
    pub final_state: StateVector,
}

impl GroverRunRecord {
    pub fn final_snapshot(&self) -> &Snapshot {
        self.snapshots.last().expect("at least the initial snapshot")
    }

    /// `iteration,target_pop,rest_pop,aux_pop,theory`, one row per snapshot.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        #[derive(Serialize)]
        struct Row {
            iteration: usize,
            target_pop: f64,
            rest_pop: f64,
            aux_pop: f64,
            theory: f64,
        }
        let mut w = csv::Writer::from_writer(out);
        for (s, &theory) in self.snapshots.iter().zip(&self.theory) {
            w.serialize(Row {
                iteration: s.iteration,
                target_pop: s.target_pop,
                rest_pop: s.rest_pop,
                aux_pop: s.aux_pop,
                theory,
            })?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `sin^2((2r + 1) asin(1/√𝒩))`, the target population after `r` exact cycles.
pub fn theory_success(r: usize, n: usize) -> f64 {
    let theta = (1.0 / (n as f64).sqrt()).asin();
    ((2 * r + 1) as f64 * theta).sin().powi(2)
}

/// Cycle count `r >= 1` at the first peak of [`theory_success`]; the smaller
/// count wins ties.
pub fn optimal_iterations(n: usize) -> usize {
    assert!(n >= 2, "need at least two entries");
    let theta = (1.0 / (n as f64).sqrt()).asin();
    let guess = (PI / (4.0 * theta) - 0.5).round().max(1.0) as usize;
    (guess.saturating_sub(1).max(1)..=guess + 1)
        .map(|r| (r, theory_success(r, n)))
        .fold((0, f64::NEG_INFINITY), |best, (r, p)| {
            if p > best.1 + 1e-12 {
                (r, p)
            } else {
                best
            }
        })
        .0
}

/// `(U_ω, U_s)` on the computational space.
pub fn ideal_unitaries(instance: &GoldbachInstance) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = instance.size();
    let mut u_omega = DMatrix::identity(n, n);
    u_omega[(instance.match_g_index(), instance.match_g_index())] = -1.0;
    let u_s = DMatrix::identity(n, n) - DMatrix::from_element(n, n, 2.0 / n as f64);
    (u_omega, u_s)
}

/// Run `r` cycles of `omega` then `s` from `initial`, snapshotting after
/// every cycle.
pub fn run_sequence(
    initial: &StateVector,
    target_index: usize,
    omega: &dyn Gate,
    s: &dyn Gate,
    r: usize,
) -> Result<GroverRunRecord, QdynError> {
    let n = initial.n_g();
    let snap = |iteration: usize, psi: &StateVector| {
        let p = measure_populations(psi, target_index);
        Snapshot {
            iteration,
            target_pop: p.target,
            rest_pop: p.rest_computational,
            aux_pop: p.auxiliary,
        }
    };
    let mut psi = initial.clone();
    let mut snapshots = Vec::with_capacity(r + 1);
    snapshots.push(snap(0, &psi));
    for i in 1..=r {
        psi = s.apply(&omega.apply(&psi)?)?;
        snapshots.push(snap(i, &psi));
    }
    let detected_index = measure_populations(&psi, target_index).detected_index;
    Ok(GroverRunRecord {
        iterations: r,
        snapshots,
        theory: (0..=r).map(|i| theory_success(i, n)).collect(),
        detected_index,
        success: detected_index == target_index,
        final_state: psi,
    })
}

/// Exact-reflection reference run.
pub fn run_ideal(instance: &GoldbachInstance, r: usize) -> GroverRunRecord {
    let oracle = IdealOracle {
        index: instance.match_g_index(),
    };
    run_sequence(
        &init_uniform(instance),
        instance.match_g_index(),
        &oracle,
        &IdealReflection,
        r,
    )
    .expect("exact reflections cannot fail")
}

/// Pulse-level run: oracle pulses and the diffusion step chosen by `pulse`.
pub fn run_physical(
    instance: &GoldbachInstance,
    pulse: &PulseConfig,
    r: usize,
) -> Result<GroverRunRecord, QdynError> {
    let omega = OmegaGate::new(instance, pulse)?;
    let s = SGate::new(instance, pulse)?;
    run_sequence(
        &init_uniform(instance),
        instance.match_g_index(),
        &omega,
        &s,
        r,
    )
}

/// One cell of a pulse-parameter sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    #[serde(rename = "M")]
    pub m: u32,
    pub v_s: f64,
    pub r_opt: usize,
    pub target_pop: f64,
}

/// Run every `(M, v_s)` combination at the optimal cycle count and rank by
/// final target population (ties: smaller `M`, then larger `v_s`).
///
/// `template` supplies `dt`, the diffusion mode and the drive frame.
pub fn sweep_pulse_params(
    instance: &GoldbachInstance,
    m_candidates: &[u32],
    v_s_candidates: &[f64],
    template: &PulseConfig,
) -> Result<Vec<SweepRow>, QdynError> {
    if m_candidates.is_empty() || v_s_candidates.is_empty() {
        return Err(QdynError::InvalidPulse("empty sweep grid".into()));
    }
    let r_opt = optimal_iterations(instance.size());
    let cells: Vec<(u32, f64)> = m_candidates
        .iter()
        .flat_map(|&m| v_s_candidates.iter().map(move |&v| (m, v)))
        .collect();
    let mut rows = cells
        .par_iter()
        .map(|&(m, v_s)| {
            let pulse = PulseConfig::new(m, v_s, instance.size())?
                .with_dt(template.dt)?
                .with_s_gate_mode(template.s_gate_mode)
                .with_frame(template.frame);
            let record = run_physical(instance, &pulse, r_opt)?;
            Ok(SweepRow {
                m,
                v_s,
                r_opt,
                target_pop: record.final_snapshot().target_pop,
            })
        })
        .collect::<Result<Vec<_>, QdynError>>()?;
    rows.sort_by(|a, b| {
        b.target_pop
            .partial_cmp(&a.target_pop)
            .unwrap_or(Ordering::Equal)
            .then(a.m.cmp(&b.m))
            .then(b.v_s.partial_cmp(&a.v_s).unwrap_or(Ordering::Equal))
    });
    Ok(rows)
}

/// `M,v_s,r_opt,target_pop`, in ranked order.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
