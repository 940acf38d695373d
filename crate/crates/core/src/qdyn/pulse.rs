use std::f64::consts::PI;

use super::QdynError;

/// Default integrator step in `ħ/U_0`.
pub const DEFAULT_DT: f64 = 1e-5;

/// How the diffusion step is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SGateMode {
    /// Exact reflection `1 - 2|s><s|` on the computational block.
    Ideal,
    /// Strong projector quench `𝒩 v_s |s><s|` on top of `H_0` for `tau_s`.
    Physical,
}

/// Frame for the oracle pulse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DriveFrame {
    /// Shifted lab frame, counter-rotating terms kept.
    Lab,
    /// Rotating-wave approximation: co-rotating terms only.
    Rwa,
}

/// Couplings and durations of the two pulses, in `U_0` / `ħ/U_0` units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseConfig {
    /// Commensurability integer: `v_omega = 1 / (2M)`.
    pub m: u32,
    pub v_omega: f64,
    pub v_s: f64,
    pub tau_omega: f64,
    pub tau_s: f64,
    pub dt: f64,
    pub s_gate_mode: SGateMode,
    pub frame: DriveFrame,
    size: usize,
}

impl PulseConfig {
    /// Pulse pair for a computational space of `size` states.
    pub fn new(m: u32, v_s: f64, size: usize) -> Result<Self, QdynError> {
        if m == 0 {
            return Err(QdynError::InvalidPulse("M must be positive".into()));
        }
        if size == 0 {
            return Err(QdynError::InvalidPulse("empty computational space".into()));
        }
        if !(v_s.is_finite() && v_s > 0.0) {
            return Err(QdynError::InvalidPulse(format!("v_s = {v_s} must be positive")));
        }
        let v_omega = 1.0 / (2.0 * m as f64);
        let cfg = PulseConfig {
            m,
            v_omega,
            v_s,
            tau_omega: PI / v_omega,
            tau_s: PI / (size as f64 * v_s),
            dt: DEFAULT_DT,
            s_gate_mode: SGateMode::Physical,
            frame: DriveFrame::Lab,
            size,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_dt(mut self, dt: f64) -> Result<Self, QdynError> {
        self.dt = dt;
        self.validate()?;
        Ok(self)
    }

    pub fn with_s_gate_mode(mut self, mode: SGateMode) -> Self {
        self.s_gate_mode = mode;
        self
    }

    pub fn with_frame(mut self, frame: DriveFrame) -> Self {
        self.frame = frame;
        self
    }

    /// Sample size the s-gate duration was computed for.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Strong-quench coupling `𝒩 v_s`.
    pub fn quench_strength(&self) -> f64 {
        self.size as f64 * self.v_s
    }

    pub fn validate(&self) -> Result<(), QdynError> {
        let bad = |m: String| Err(QdynError::InvalidPulse(m));
        if self.v_omega != 1.0 / (2.0 * self.m as f64) {
            return bad(format!("v_omega {} != 1/(2M) for M = {}", self.v_omega, self.m));
        }
        if (self.tau_omega * self.v_omega - PI).abs() > 1e-12 {
            return bad("tau_omega * v_omega != pi".into());
        }
        if (self.tau_s * self.quench_strength() - PI).abs() > 1e-12 {
            return bad("tau_s * N * v_s != pi".into());
        }
        // the quench must dominate the level spacing U_0
        if self.quench_strength() < 10.0 {
            return bad(format!(
                "N * v_s = {} is not in the strong-quench regime (>= 10)",
                self.quench_strength()
            ));
        }
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return bad(format!("dt = {} must be positive", self.dt));
        }
        Ok(())
    }
}
