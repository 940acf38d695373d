use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::pulse::{DriveFrame, PulseConfig};
use crate::instance::GoldbachInstance;

/// Real symmetric Hamiltonian as a function of time.
pub trait Hamiltonian: Sync {
    fn dim(&self) -> usize;

    fn at(&self, t: f64) -> DMatrix<f64>;

    /// Upper bound on the fastest phase rate, used for the step-size guard.
    fn frequency_bound(&self) -> f64;

    /// Time-independent Hamiltonians are exponentiated in one step.
    fn is_static(&self) -> bool {
        false
    }
}

/// Base Hamiltonian plus the uniform g↔e drive `2 v cos(p t)`.
#[derive(Debug, Clone)]
pub struct DriveHamiltonian {
    levels: Vec<f64>,
    n_g: usize,
    v_omega: f64,
    p_drive: f64,
    frame: DriveFrame,
}

impl DriveHamiltonian {
    pub fn new(instance: &GoldbachInstance, pulse: &PulseConfig) -> Self {
        DriveHamiltonian {
            levels: instance
                .g_levels()
                .iter()
                .chain(instance.e_levels())
                .map(|&l| l as f64)
                .collect(),
            n_g: instance.size(),
            v_omega: pulse.v_omega,
            p_drive: instance.p_drive() as f64,
            frame: pulse.frame,
        }
    }

    pub fn frame(&self) -> DriveFrame {
        self.frame
    }

    pub fn p_drive(&self) -> f64 {
        self.p_drive
    }

    /// One oscillation period of the drive, `2π/p`.
    pub fn drive_period(&self) -> f64 {
        2.0 * PI / self.p_drive
    }

    fn with_coupling(&self, diag_e_shift: f64, coupling: f64) -> DMatrix<f64> {
        let n = self.levels.len();
        let n_g = self.n_g;
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                self.levels[i] + if i >= n_g { diag_e_shift } else { 0.0 }
            } else if (i < n_g) != (j < n_g) {
                coupling
            } else {
                0.0
            }
        })
    }
}

impl Hamiltonian for DriveHamiltonian {
    fn dim(&self) -> usize {
        self.levels.len()
    }

    /// Lab frame: the full cosine drive. RWA frame: the excited block is
    /// viewed rotating at `p`, which leaves a static coupling `v` and raises
    /// every excited level by `p`; at whole drive periods both frames agree.
    fn at(&self, t: f64) -> DMatrix<f64> {
        match self.frame {
            DriveFrame::Lab => {
                self.with_coupling(0.0, 2.0 * self.v_omega * (self.p_drive * t).cos())
            }
            DriveFrame::Rwa => self.with_coupling(self.p_drive, self.v_omega),
        }
    }

    fn frequency_bound(&self) -> f64 {
        let max_level = self.levels.iter().fold(0.0f64, |m, l| m.max(l.abs()));
        max_level + self.p_drive + 2.0 * self.v_omega * self.dim() as f64
    }

    fn is_static(&self) -> bool {
        self.frame == DriveFrame::Rwa
    }
}

/// A fixed matrix.
#[derive(Debug, Clone)]
pub struct StaticHamiltonian {
    matrix: DMatrix<f64>,
}

impl StaticHamiltonian {
    pub fn new(matrix: DMatrix<f64>) -> Self {
        StaticHamiltonian { matrix }
    }

    /// `H_0` alone.
    pub fn base(instance: &GoldbachInstance) -> Self {
        let levels: Vec<f64> = instance
            .g_levels()
            .iter()
            .chain(instance.e_levels())
            .map(|&l| l as f64)
            .collect();
        StaticHamiltonian::new(DMatrix::from_diagonal(&levels.into()))
    }

    /// `H_0 + 𝒩 v_s |s><s|`; the projector term is `v_s` on every g–g entry.
    pub fn quench(instance: &GoldbachInstance, v_s: f64) -> Self {
        let mut h = Self::base(instance).matrix;
        let n = instance.size();
        h.view_mut((0, 0), (n, n)).add_scalar_mut(v_s);
        StaticHamiltonian::new(h)
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }
}

impl Hamiltonian for StaticHamiltonian {
    fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    fn at(&self, _t: f64) -> DMatrix<f64> {
        self.matrix.clone()
    }

    fn frequency_bound(&self) -> f64 {
        // Gershgorin
        self.matrix
            .row_iter()
            .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    fn is_static(&self) -> bool {
        true
    }
}

/// Lab-frame Hamiltonian at time `t` on the drive clock.
pub fn hamiltonian_at(instance: &GoldbachInstance, pulse: &PulseConfig, t: f64) -> DMatrix<f64> {
    DriveHamiltonian::new(instance, &pulse.with_frame(DriveFrame::Lab)).at(t)
}
