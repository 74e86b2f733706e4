//! Wavefunctions sampled on a uniform grid and their observables.
//!
//! Integrals use the trapezoid rule. The kinetic term uses the same
//! eighth-order stencil as the propagator, so the grid energy is the
//! expectation of exactly the operator that drives the evolution.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;
use num_complex::Complex64;

use crate::dynamics::mode::instantaneous_eigenstate;
use crate::error::{Error, Result};
use crate::model::OscillatorSpec;

/// Central second-derivative weights for offsets 0..=4, eighth order.
pub const STENCIL: [f64; 5] = [-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0];

#[derive(Debug, Clone, PartialEq)]
pub struct GridState {
    x_min: f64,
    x_max: f64,
    amplitudes: Vec<Complex64>,
    time: f64,
}

impl GridState {
    pub fn new(x_min: f64, x_max: f64, amplitudes: Vec<Complex64>, time: f64) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(Error::InvalidArgument("grid needs at least two points"));
        }
        if !(x_max > x_min) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::InvalidArgument("grid bounds must be finite with x_max > x_min"));
        }
        Ok(Self { x_min, x_max, amplitudes, time })
    }

    /// Samples `f(x)` on `n` points spanning `[x_min, x_max]`.
    pub fn from_fn(x_min: f64, x_max: f64, n: usize, time: f64, f: impl FnMut(f64) -> Complex64) -> Result<Self> {
        let dx = (x_max - x_min) / (n.max(2) - 1) as f64;
        let amps = (0..n).map(|i| x_min + i as f64 * dx).map(f).collect();
        Self::new(x_min, x_max, amps, time)
    }

    pub fn from_real(x_min: f64, x_max: f64, values: &[f64], time: f64) -> Result<Self> {
        Self::new(x_min, x_max, values.iter().map(|&v| Complex64::new(v, 0.0)).collect(), time)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.len() - 1) as f64
    }

    pub fn xs(&self) -> Vec<f64> {
        let dx = self.dx();
        (0..self.len()).map(|i| self.x_min + i as f64 * dx).collect()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub(crate) fn set_time(&mut self, t: f64) {
        self.time = t;
    }

    fn same_grid(&self, other: &GridState) -> bool {
        self.len() == other.len() && self.x_min == other.x_min && self.x_max == other.x_max
    }

    /// Trapezoid weight at index `i`.
    fn weight(&self, i: usize) -> f64 {
        if i == 0 || i + 1 == self.len() {
            0.5 * self.dx()
        } else {
            self.dx()
        }
    }

    pub fn norm_sq(&self) -> f64 {
        let a = &self.amplitudes;
        let total: f64 = a.iter().map(|v| v.norm_sqr()).sum();
        (total - 0.5 * (a[0].norm_sqr() + a[a.len() - 1].norm_sqr())) * self.dx()
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &GridState) -> Result<Complex64> {
        if !self.same_grid(other) {
            return Err(Error::GridMismatch);
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .enumerate()
            .map(|(i, (a, b))| a.conj() * b * self.weight(i))
            .sum())
    }

    /// Copy scaled to unit norm.
    pub fn normalized(&self) -> GridState {
        let s = 1.0 / self.norm_sq().sqrt();
        let mut out = self.clone();
        out.amplitudes.iter_mut().for_each(|a| *a *= s);
        out
    }

    /// Copy multiplied by `e^{iφ}`.
    pub fn with_phase(&self, phi: f64) -> GridState {
        let f = Complex64::from_polar(1.0, phi);
        let mut out = self.clone();
        out.amplitudes.iter_mut().for_each(|a| *a *= f);
        out
    }

    /// Probability density at the two boundary points, whichever is larger.
    pub fn boundary_density(&self) -> f64 {
        self.amplitudes[0].norm_sqr().max(self.amplitudes[self.len() - 1].norm_sqr())
    }

    /// `max_i |self_i − other_i|`.
    pub fn max_abs_diff(&self, other: &GridState) -> Result<f64> {
        if !self.same_grid(other) {
            return Err(Error::GridMismatch);
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// `⟨ψ|x²|ψ⟩ / ⟨ψ|ψ⟩`.
    pub fn second_moment(&self) -> f64 {
        let xs = self.xs();
        let m: f64 = self.amplitudes.iter().enumerate().map(|(i, a)| self.weight(i) * a.norm_sqr() * xs[i] * xs[i]).sum();
        m / self.norm_sq()
    }

    /// `⟨ψ|H|ψ⟩ / ⟨ψ|ψ⟩` with `H = p²/2m + m ω² x²/2`, in units of ħω₀.
    pub fn energy(&self, omega_sq: f64, spec: &OscillatorSpec) -> f64 {
        let (m, hbar) = (spec.mass(), spec.hbar());
        let n = self.len();
        let dx = self.dx();
        let xs = self.xs();
        let psi = &self.amplitudes;
        let kin = -hbar * hbar / (2.0 * m * dx * dx);
        let mut total = 0.0;
        for i in 0..n {
            let mut d2 = psi[i] * STENCIL[0];
            for (k, &c) in STENCIL.iter().enumerate().skip(1) {
                if i >= k {
                    d2 += psi[i - k] * c;
                }
                if i + k < n {
                    d2 += psi[i + k] * c;
                }
            }
            let h_psi = d2 * kin + psi[i] * (0.5 * m * omega_sq * xs[i] * xs[i]);
            total += self.weight(i) * (psi[i].conj() * h_psi).re;
        }
        total / self.norm_sq() / (hbar * spec.omega0())
    }
}

/// `|⟨a|b⟩|²` for normalized states on the same grid.
pub fn fidelity(a: &GridState, b: &GridState) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr())
}

/// `p_n = |⟨u_n(ω)|ψ⟩|²` for `n = 0..=n_max`.
pub fn populations(psi: &GridState, omega: f64, n_max: usize, spec: &OscillatorSpec) -> Result<Vec<f64>> {
    let xs = psi.xs();
    (0..=n_max)
        .map(|n| {
            let u = GridState::from_real(psi.x_min, psi.x_max, &instantaneous_eigenstate(n, omega, spec, &xs)?, psi.time)?;
            fidelity(&u, psi)
        })
        .collect()
}
