use nalgebra::DVector;
use num_complex::Complex64;

use crate::instance::GoldbachInstance;

/// Amplitudes over `|n> ⊗ |g>` (first `n_g` entries) followed by
/// `|m_II> ⊗ |e>`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: DVector<Complex64>,
    n_g: usize,
}

impl StateVector {
    pub fn new(g_amps: &[Complex64], e_amps: &[Complex64]) -> Self {
        let amps = DVector::from_iterator(
            g_amps.len() + e_amps.len(),
            g_amps.iter().chain(e_amps).copied(),
        );
        StateVector {
            amps,
            n_g: g_amps.len(),
        }
    }

    pub(crate) fn from_parts(amps: DVector<Complex64>, n_g: usize) -> Self {
        debug_assert!(n_g <= amps.len());
        StateVector { amps, n_g }
    }

    /// Uniform superposition over the computational block.
    pub fn uniform(n_g: usize, n_e: usize) -> Self {
        let mut amps = DVector::zeros(n_g + n_e);
        amps.rows_mut(0, n_g)
            .fill(Complex64::new(1.0 / (n_g as f64).sqrt(), 0.0));
        StateVector { amps, n_g }
    }

    /// Computational basis state `|index> ⊗ |g>`.
    pub fn basis_g(n_g: usize, n_e: usize, index: usize) -> Self {
        let mut amps = DVector::zeros(n_g + n_e);
        amps[index] = Complex64::new(1.0, 0.0);
        StateVector { amps, n_g }
    }

    pub fn g_amps(&self) -> &[Complex64] {
        &self.amps.as_slice()[..self.n_g]
    }

    pub fn e_amps(&self) -> &[Complex64] {
        &self.amps.as_slice()[self.n_g..]
    }

    pub fn n_g(&self) -> usize {
        self.n_g
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut DVector<Complex64> {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<s|psi>` with `|s>` the uniform computational superposition.
    pub fn overlap_uniform(&self) -> Complex64 {
        let sum: Complex64 = self.g_amps().iter().sum();
        sum / (self.n_g as f64).sqrt()
    }

    /// Largest `|a_i - b_i|` over all components.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// The Grover start state `|s>`: uniform real amplitudes on the
/// computational space, nothing in the auxiliary space.
pub fn init_uniform(instance: &GoldbachInstance) -> StateVector {
    StateVector::uniform(instance.size(), instance.aux_count())
}

/// Readout in the `{|n>} ⊗ |g>` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Populations {
    pub g: Vec<f64>,
    pub e: Vec<f64>,
    pub target: f64,
    pub rest_computational: f64,
    pub auxiliary: f64,
    /// Most probable computational state (0-based).
    pub detected_index: usize,
}

pub fn measure_populations(state: &StateVector, target_index: usize) -> Populations {
    let g: Vec<f64> = state.g_amps().iter().map(|a| a.norm_sqr()).collect();
    let e: Vec<f64> = state.e_amps().iter().map(|a| a.norm_sqr()).collect();
    let target = g[target_index];
    let rest_computational = g
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != target_index)
        .map(|(_, p)| p)
        .sum();
    let auxiliary = e.iter().sum();
    // first index wins on ties
    let detected_index = g
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, &p)| {
            if p > best.1 {
                (i, p)
            } else {
                best
            }
        })
        .0;
    Populations {
        g,
        e,
        target,
        rest_computational,
        auxiliary,
        detected_index,
    }
}
