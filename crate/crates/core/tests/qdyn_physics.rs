use std::f64::consts::PI;

use goldbach_grover::instance::{build_instance, GoldbachInstance};
use goldbach_grover::qdyn::{
    evolve, init_uniform, omega_pulse, s_gate, trace_cycle, write_trace_csv, DriveFrame,
    DriveHamiltonian, Gate, Hamiltonian, IdealOracle, IdealReflection, OmegaGate, PulseConfig,
    SGateMode, StateVector, StaticHamiltonian,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

fn small() -> GoldbachInstance {
    build_instance(50, 4, 7, 7).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Two levels `|g>` at 0 and `|e>` at `-(p + delta)`, coupled by `2 v cos(p t)`.
struct TwoLevel {
    p: f64,
    delta: f64,
    v: f64,
}

impl TwoLevel {
    fn matrix(&self, t: f64) -> [[f64; 2]; 2] {
        let k = 2.0 * self.v * (self.p * t).cos();
        [[0.0, k], [k, -(self.p + self.delta)]]
    }
}

impl Hamiltonian for TwoLevel {
    fn dim(&self) -> usize {
        2
    }
    fn at(&self, t: f64) -> DMatrix<f64> {
        let m = self.matrix(t);
        DMatrix::from_row_slice(2, 2, &[m[0][0], m[0][1], m[1][0], m[1][1]])
    }
    fn frequency_bound(&self) -> f64 {
        self.p + self.delta.abs() + 2.0 * self.v
    }
}

/// Classical fourth-order Runge-Kutta on `dψ/dt = -i H(t) ψ`.
fn rk4(ham: &TwoLevel, psi: [Complex64; 2], duration: f64, steps: usize) -> [Complex64; 2] {
    let rhs = |t: f64, y: [Complex64; 2]| {
        let m = ham.matrix(t);
        let mi = Complex64::new(0.0, -1.0);
        [
            mi * (y[0] * m[0][0] + y[1] * m[0][1]),
            mi * (y[0] * m[1][0] + y[1] * m[1][1]),
        ]
    };
    let h = duration / steps as f64;
    let mut y = psi;
    for k in 0..steps {
        let t = k as f64 * h;
        let axpy = |a: [Complex64; 2], s: f64, b: [Complex64; 2]| [a[0] + b[0] * s, a[1] + b[1] * s];
        let k1 = rhs(t, y);
        let k2 = rhs(t + h / 2.0, axpy(y, h / 2.0, k1));
        let k3 = rhs(t + h / 2.0, axpy(y, h / 2.0, k2));
        let k4 = rhs(t + h, axpy(y, h, k3));
        for i in 0..2 {
            y[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0);
        }
    }
    y
}

#[test]
fn resonant_two_pi_pulse_flips_sign() {
    // rotating-frame coupling: exact 2π rotation after 2πM
    let m = 4.0;
    let v = 1.0 / (2.0 * m);
    let h = StaticHamiltonian::new(DMatrix::from_row_slice(2, 2, &[0.0, v, v, 0.0]));
    let psi = StateVector::new(&[c(1.0, 0.0)], &[c(0.0, 0.0)]);
    let out = evolve(&psi, &h, 2.0 * PI * m, 1e-3).unwrap();
    assert!((out.g_amps()[0] - c(-1.0, 0.0)).norm() < 1e-6);
    assert!(out.e_amps()[0].norm() < 1e-6);
}

#[test]
fn detuned_two_level_matches_runge_kutta() {
    let m = 3.0;
    let ham = TwoLevel {
        p: 223.0,
        delta: 2.0,
        v: 1.0 / (2.0 * m),
    };
    let tau = 2.0 * PI * m;
    let psi = StateVector::new(&[c(1.0, 0.0)], &[c(0.0, 0.0)]);
    let out = evolve(&psi, &ham, tau, 2e-5).unwrap();
    let reference = rk4(&ham, [c(1.0, 0.0), c(0.0, 0.0)], tau, 400_000);
    assert!((out.g_amps()[0] - reference[0]).norm() < 1e-6);
    assert!((out.e_amps()[0] - reference[1]).norm() < 1e-6);
    assert!(out.g_amps()[0].norm_sqr() >= 0.97);
}

#[test]
fn free_evolution_is_identity_over_the_pulse() {
    let inst = build_instance(4_000_000_000_000_000_000, 51, 307, 223).unwrap();
    let h = StaticHamiltonian::base(&inst);
    for m in [1u32, 3, 7] {
        for i in [0, 6, 50, 52, 57] {
            let psi = StateVector::basis_g(51, 7, i);
            let out = evolve(&psi, &h, 2.0 * PI * m as f64, 1.0).unwrap();
            assert!(out.max_abs_diff(&psi) < 1e-9, "M = {m}, level {i}");
        }
    }
}

#[test]
fn leakage_shrinks_as_the_pulse_lengthens() {
    let inst = small();
    let s = init_uniform(&inst);
    let ideal = IdealOracle {
        index: inst.match_g_index(),
    }
    .apply(&s)
    .unwrap();
    let errs: Vec<f64> = [3u32, 6, 12]
        .iter()
        .map(|&m| {
            let pulse = PulseConfig::new(m, 100.0, 4).unwrap();
            omega_pulse(&s, &inst, &pulse).unwrap().max_abs_diff(&ideal)
        })
        .collect();
    assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
}

#[test]
fn physical_diffusion_converges_with_quench_strength() {
    let inst = small();
    let psi = omega_pulse(
        &init_uniform(&inst),
        &inst,
        &PulseConfig::new(3, 100.0, 4).unwrap(),
    )
    .unwrap();
    let ideal = IdealReflection.apply(&psi).unwrap();
    let errs: Vec<f64> = [10.0, 100.0, 1000.0]
        .iter()
        .map(|&v_s| {
            let pulse = PulseConfig::new(3, v_s, 4).unwrap();
            s_gate(&psi, &inst, &pulse).unwrap().max_abs_diff(&ideal)
        })
        .collect();
    assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
    assert!(errs[2] < 0.05);
}

#[test]
fn oracle_power_equals_direct_integration() {
    let inst = small();
    let pulse = PulseConfig::new(3, 100.0, 4).unwrap();
    let drive = DriveHamiltonian::new(&inst, &pulse);
    let period = drive.drive_period();
    let dt = period / (period / pulse.dt).ceil();
    let s = init_uniform(&inst);
    let direct = evolve(&s, &drive, pulse.tau_omega, dt).unwrap();
    let gate = OmegaGate::new(&inst, &pulse).unwrap().apply(&s).unwrap();
    assert!(gate.max_abs_diff(&direct) < 1e-9, "{}", gate.max_abs_diff(&direct));
}

#[test]
fn rotating_frame_tracks_lab_frame() {
    let inst = small();
    let s = init_uniform(&inst);
    let lab = PulseConfig::new(20, 100.0, 4).unwrap();
    let rwa = lab.with_frame(DriveFrame::Rwa);
    let a = omega_pulse(&s, &inst, &lab).unwrap();
    let b = omega_pulse(&s, &inst, &rwa).unwrap();
    assert!(a.max_abs_diff(&b) < 2e-2, "{}", a.max_abs_diff(&b));
}

/// `H'(t) = -H(tau - t)`: integrates the original evolution backwards.
struct Reversed<'a> {
    inner: &'a DriveHamiltonian,
    tau: f64,
}

impl Hamiltonian for Reversed<'_> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn at(&self, t: f64) -> DMatrix<f64> {
        -self.inner.at(self.tau - t)
    }
    fn frequency_bound(&self) -> f64 {
        self.inner.frequency_bound()
    }
}

#[test]
fn reverse_evolution_restores_the_state() {
    let inst = small();
    let pulse = PulseConfig::new(3, 100.0, 4).unwrap();
    let drive = DriveHamiltonian::new(&inst, &pulse);
    let tau = 2.0;
    let s = init_uniform(&inst);
    let fwd = evolve(&s, &drive, tau, pulse.dt).unwrap();
    assert!(fwd.max_abs_diff(&s) > 1e-3);
    let back = evolve(&fwd, &Reversed { inner: &drive, tau }, tau, pulse.dt).unwrap();
    assert!(back.max_abs_diff(&s) < 1e-9);
}

#[test]
fn energy_offset_does_not_change_populations() {
    let inst = small();
    let pulse = PulseConfig::new(3, 100.0, 4).unwrap();
    let pops = |i: &GoldbachInstance| {
        let psi = OmegaGate::new(i, &pulse).unwrap().apply(&init_uniform(i)).unwrap();
        let psi = s_gate(&psi, i, &pulse).unwrap();
        psi.amplitudes().iter().map(|a| a.norm_sqr()).collect::<Vec<_>>()
    };
    let reference = pops(&inst);
    for offset in [40u64, 52, 60, 80] {
        let moved = pops(&inst.shift_energies(offset).unwrap());
        for (a, b) in reference.iter().zip(&moved) {
            assert!((a - b).abs() < 1e-8, "offset {offset}");
        }
    }
}

#[test]
fn trace_ends_where_the_gates_end() {
    let inst = small();
    let pulse = PulseConfig::new(3, 100.0, 4).unwrap();
    let s = init_uniform(&inst);
    let (traced, rows) = trace_cycle(&inst, &pulse, &s, 3).unwrap();
    let gated = s_gate(&omega_pulse(&s, &inst, &pulse).unwrap(), &inst, &pulse).unwrap();
    assert!(traced.max_abs_diff(&gated) < 1e-9);
    assert_eq!(rows[0].state_label, "g1");
    assert_eq!(rows[5].state_label, "e2");
    // one initial sample, three per drive period, one per quench step
    let periods = 3 * 7;
    let quench_steps = (pulse.tau_s / pulse.dt).ceil() as usize;
    assert_eq!(rows.len(), 6 * (1 + 3 * periods + quench_steps));
    assert!(rows.windows(2).all(|w| w[1].time >= w[0].time));
    let last = rows.last().unwrap();
    assert!((last.time - pulse.tau_omega - pulse.tau_s).abs() < 1e-9);

    let mut buf = Vec::new();
    write_trace_csv(&rows, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("time,state_label,re,im\n"));
    assert_eq!(text.lines().count(), rows.len() + 1);

    let ideal = pulse.with_s_gate_mode(SGateMode::Ideal);
    let (_, rows) = trace_cycle(&inst, &ideal, &s, 3).unwrap();
    assert!((rows.last().unwrap().time - ideal.tau_omega).abs() < 1e-9);
}

fn arb_state(n_g: usize, n_e: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n_g + n_e)
        .prop_filter("non-zero", |v| v.iter().any(|&(a, b)| a.abs() + b.abs() > 1e-3))
        .prop_map(move |v| {
            let norm = v.iter().map(|&(a, b)| a * a + b * b).sum::<f64>().sqrt();
            let amps: Vec<Complex64> = v.iter().map(|&(a, b)| c(a / norm, b / norm)).collect();
            StateVector::new(&amps[..n_g], &amps[n_g..])
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ideal_diffusion_is_an_involution(psi in arb_state(4, 2)) {
        let twice = IdealReflection.apply(&IdealReflection.apply(&psi).unwrap()).unwrap();
        prop_assert!(twice.max_abs_diff(&psi) < 1e-14);
    }

    #[test]
    fn pulses_conserve_norm(psi in arb_state(4, 2), m in 2u32..8, v_s in 10.0f64..2000.0) {
        let inst = small();
        let pulse = PulseConfig::new(m, v_s, 4).unwrap();
        let a = omega_pulse(&psi, &inst, &pulse).unwrap();
        prop_assert!((a.norm_sqr() - 1.0).abs() < 1e-9);
        let b = s_gate(&a, &inst, &pulse).unwrap();
        prop_assert!((b.norm_sqr() - 1.0).abs() < 1e-9);
    }
}
