//! Exponential-midpoint integration of `i dψ/dt = H(t) ψ`.
//!
//! Each step of length `h` applies `exp(-i H(t + h/2) h)`, computed from the
//! eigendecomposition of the real symmetric `H`, so every step is unitary to
//! rounding. The scheme is second order in `h`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use super::hamiltonian::Hamiltonian;
use super::state::StateVector;
use super::{QdynError, NORM_TOLERANCE};

/// Largest phase advance per step allowed for time-dependent Hamiltonians.
const MAX_PHASE_PER_STEP: f64 = 0.1;

/// Dense unitary stored as separate real and imaginary parts, so products
/// run on the real GEMM kernels.
#[derive(Debug, Clone, PartialEq)]
pub struct Propagator {
    re: DMatrix<f64>,
    im: DMatrix<f64>,
}

impl Propagator {
    pub fn identity(n: usize) -> Self {
        Propagator {
            re: DMatrix::identity(n, n),
            im: DMatrix::zeros(n, n),
        }
    }

    /// `exp(-i h tau)` for real symmetric `h`.
    pub fn exp_symmetric(h: &DMatrix<f64>, tau: f64) -> Self {
        let mut u = Self::identity(h.nrows());
        u.step_left(h, tau);
        u
    }

    /// `self <- exp(-i h tau) * self`.
    fn step_left(&mut self, h: &DMatrix<f64>, tau: f64) {
        let eig = SymmetricEigen::new(h.clone());
        let q = &eig.eigenvectors;
        let mut x = q.tr_mul(&self.re);
        let mut y = q.tr_mul(&self.im);
        for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
            let (s, c) = (lambda * tau).sin_cos();
            for j in 0..x.ncols() {
                let (a, b) = (x[(k, j)], y[(k, j)]);
                x[(k, j)] = c * a + s * b;
                y[(k, j)] = c * b - s * a;
            }
        }
        self.re = q * x;
        self.im = q * y;
    }

    /// Product of midpoint steps over `[t0, t0 + steps * h]`.
    pub fn midpoint(hamiltonian: &dyn Hamiltonian, t0: f64, h: f64, steps: usize) -> Self {
        let mut u = Self::identity(hamiltonian.dim());
        for k in 0..steps {
            let t = t0 + (k as f64 + 0.5) * h;
            u.step_left(&hamiltonian.at(t), h);
        }
        u
    }

    pub fn dim(&self) -> usize {
        self.re.nrows()
    }

    /// `self * first`: apply `first`, then `self`.
    pub fn after(&self, first: &Propagator) -> Propagator {
        Propagator {
            re: &self.re * &first.re - &self.im * &first.im,
            im: &self.re * &first.im + &self.im * &first.re,
        }
    }

    /// `self^k` by repeated squaring, projecting back onto the unitary
    /// group after every product so rounding does not compound.
    pub fn pow(&self, mut k: u64) -> Propagator {
        let mut acc = Propagator::identity(self.dim());
        let mut base = self.polished();
        while k > 0 {
            if k & 1 == 1 {
                acc = base.after(&acc).polished();
            }
            k >>= 1;
            if k > 0 {
                base = base.after(&base).polished();
            }
        }
        acc
    }

    /// `U†U` as `(re, im)`.
    fn gram(&self) -> (DMatrix<f64>, DMatrix<f64>) {
        (
            self.re.tr_mul(&self.re) + self.im.tr_mul(&self.im),
            self.re.tr_mul(&self.im) - self.im.tr_mul(&self.re),
        )
    }

    /// One Newton-Schulz step `U (3 - U†U) / 2` towards the nearest unitary;
    /// squares the unitarity defect.
    pub fn polished(&self) -> Propagator {
        let (g_re, g_im) = self.gram();
        let n = self.dim();
        let b = Propagator {
            re: (DMatrix::identity(n, n) * 3.0 - g_re) * 0.5,
            im: g_im * -0.5,
        };
        self.after(&b)
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(self.re[(i, j)], self.im[(i, j)])
    }

    pub fn apply(&self, psi: &DVector<Complex64>) -> DVector<Complex64> {
        let pr = psi.map(|a| a.re);
        let pi = psi.map(|a| a.im);
        let out_re = &self.re * &pr - &self.im * &pi;
        let out_im = &self.re * &pi + &self.im * &pr;
        out_re.zip_map(&out_im, Complex64::new)
    }

    /// `max |(U† U - 1)_ij|`.
    pub fn unitarity_defect(&self) -> f64 {
        let (re, im) = self.gram();
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max(Complex64::new(re[(i, j)] - target, im[(i, j)]).norm());
            }
        }
        worst
    }
}

pub(crate) fn check_symmetric(h: &DMatrix<f64>) -> Result<(), QdynError> {
    let scale = h.amax().max(1.0);
    let asymmetry = (h - h.transpose()).amax();
    if asymmetry > 1e-12 * scale {
        return Err(QdynError::NonHermitian { asymmetry });
    }
    Ok(())
}

pub(crate) fn check_step(hamiltonian: &dyn Hamiltonian, h: f64) -> Result<(), QdynError> {
    if hamiltonian.is_static() {
        return Ok(());
    }
    let max = MAX_PHASE_PER_STEP / hamiltonian.frequency_bound();
    if h > max {
        return Err(QdynError::StepTooLarge { dt: h, max });
    }
    Ok(())
}

pub(crate) fn check_norm(before: f64, after: f64) -> Result<(), QdynError> {
    let drift = (after.sqrt() - before.sqrt()).abs();
    if drift > NORM_TOLERANCE || !drift.is_finite() {
        return Err(QdynError::NormDrift { drift });
    }
    Ok(())
}

/// Step count and actual step for covering `duration` with steps `<= dt`.
pub(crate) fn step_grid(duration: f64, dt: f64) -> (usize, f64) {
    // tolerate rounding when dt already divides duration
    let steps = ((duration / dt * (1.0 - 1e-12)).ceil() as usize).max(1);
    (steps, duration / steps as f64)
}

/// Evolve `state` from `t = 0` for `duration` under `hamiltonian`.
pub fn evolve(
    state: &StateVector,
    hamiltonian: &dyn Hamiltonian,
    duration: f64,
    dt: f64,
) -> Result<StateVector, QdynError> {
    evolve_observed(state, hamiltonian, duration, dt, |_, _| {})
}

/// As [`evolve`], calling `observe(t, ψ(t))` after every step.
pub fn evolve_observed<F>(
    state: &StateVector,
    hamiltonian: &dyn Hamiltonian,
    duration: f64,
    dt: f64,
    mut observe: F,
) -> Result<StateVector, QdynError>
where
    F: FnMut(f64, &StateVector),
{
    if state.dim() != hamiltonian.dim() {
        return Err(QdynError::DimensionMismatch {
            state: state.dim(),
            hamiltonian: hamiltonian.dim(),
        });
    }
    if !(dt > 0.0 && duration >= 0.0) {
        return Err(QdynError::InvalidPulse(format!(
            "need dt > 0 and duration >= 0, got dt = {dt}, duration = {duration}"
        )));
    }
    let norm0 = state.norm_sqr();
    if duration == 0.0 {
        return Ok(state.clone());
    }
    let (steps, h) = step_grid(duration, dt);
    check_step(hamiltonian, h)?;
    check_symmetric(&hamiltonian.at(0.5 * h))?;

    let mut psi = state.clone();
    let fixed = hamiltonian
        .is_static()
        .then(|| Propagator::exp_symmetric(&hamiltonian.at(0.0), h));
    for k in 0..steps {
        let next = match &fixed {
            Some(u) => u.apply(psi.amplitudes()),
            None => {
                let t = (k as f64 + 0.5) * h;
                Propagator::exp_symmetric(&hamiltonian.at(t), h).apply(psi.amplitudes())
            }
        };
        *psi.amplitudes_mut() = next;
        observe((k + 1) as f64 * h, &psi);
    }
    check_norm(norm0, psi.norm_sqr())?;
    Ok(psi)
}
