//! Analytic expanding modes and the instantaneous eigenbasis.
//!
//! With `y = √(mω₀/ħ) x / b`,
//!
//! ```text
//! Ψ_n(t, x) = (mω₀/ħ)^{1/4} b^{-1/2} φ_n(y) exp(i m ḃ x² / (2ħ b)) exp(i α_n(t))
//! α_n(t)    = −(n + ½) ω₀ ∫₀ᵗ dt′ / b²
//! ```
//!
//! is an exact solution of the Schrödinger equation for the ω(t) obtained from
//! b by inverse engineering. At t = 0 and t = t_f it reduces to the
//! eigenstates of the initial and final traps.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;
use num_complex::Complex64;

use crate::dynamics::grid::GridState;
use crate::dynamics::hermite::hermite_function;
use crate::error::{Error, Result};
use crate::model::OscillatorSpec;
use crate::numeric::quad;
use crate::profile::FrequencyProfile;
use crate::scaling::ScalingLaw;

/// Relative tolerance for the α_n quadrature.
pub const PHASE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy)]
pub struct ExpandingMode<'a> {
    pub n: usize,
    pub law: &'a ScalingLaw,
    pub spec: &'a OscillatorSpec,
}

impl<'a> ExpandingMode<'a> {
    pub fn new(n: usize, law: &'a ScalingLaw, spec: &'a OscillatorSpec) -> Result<Self> {
        if !(spec.omega0() > 0.0) {
            return Err(Error::InvalidMode);
        }
        Ok(Self { n, law, spec })
    }

    fn level(&self) -> f64 {
        self.n as f64 + 0.5
    }

    /// α_n(t).
    pub fn phase(&self, t: f64) -> f64 {
        if t == self.law.start() {
            return 0.0;
        }
        let q = quad::integrate(
            |s| {
                let b = self.law.b(s);
                1.0 / (b * b)
            },
            self.law.start(),
            t,
            PHASE_TOL,
            0.0,
        );
        -self.level() * self.spec.omega0() * q.value
    }

    /// Ψ_n(t, x) at each position.
    pub fn wavefunction(&self, t: f64, xs: &[f64]) -> Result<Vec<Complex64>> {
        let k = self.law.kinematics(t);
        if !(k.b > 0.0) {
            return Err(Error::PositivityViolated { t, b: k.b });
        }
        let (m, hbar, w0) = (self.spec.mass(), self.spec.hbar(), self.spec.omega0());
        let inv_len = (m * w0 / hbar).sqrt();
        let amp = inv_len.sqrt() / k.b.sqrt();
        let chirp = m * k.bdot / (2.0 * hbar * k.b);
        let alpha = self.phase(t);
        Ok(xs
            .iter()
            .map(|&x| {
                let y = inv_len * x / k.b;
                Complex64::from_polar(amp * hermite_function(self.n, y), chirp * x * x + alpha)
            })
            .collect())
    }

    /// Ψ_n(t) on `n_points` spanning `[x_min, x_max]`.
    pub fn on_grid(&self, t: f64, x_min: f64, x_max: f64, n_points: usize) -> Result<GridState> {
        let probe = GridState::from_fn(x_min, x_max, n_points, t, |_| Complex64::new(0.0, 0.0))?;
        GridState::new(x_min, x_max, self.wavefunction(t, &probe.xs())?, t)
    }

    /// `⟨H(t)⟩_n / (ħω₀) = (2n + 1)(ḃ² + ω²b² + ω₀²/b²) / (4ω₀²)`.
    pub fn energy(&self, profile: &FrequencyProfile, t: f64) -> f64 {
        let k = self.law.kinematics(t);
        let w0 = self.spec.omega0();
        (2.0 * self.level()) * (k.bdot * k.bdot + profile.omega_sq(t) * k.b * k.b + w0 * w0 / (k.b * k.b))
            / (4.0 * w0 * w0)
    }

    /// σ = b √(n + ½) √(ħ/(mω₀)).
    pub fn width(&self, t: f64) -> f64 {
        self.law.b(t) * self.level().sqrt() * self.spec.length0()
    }
}

/// Eigenfunction `u_n` of the trap with angular frequency `omega`.
pub fn instantaneous_eigenstate(n: usize, omega: f64, spec: &OscillatorSpec, xs: &[f64]) -> Result<Vec<f64>> {
    if !(omega > 0.0) {
        return Err(Error::NonPositiveParameter { name: "omega", value: omega });
    }
    let inv_len = (spec.mass() * omega / spec.hbar()).sqrt();
    let amp = inv_len.sqrt();
    Ok(xs.iter().map(|&x| amp * hermite_function(n, inv_len * x)).collect())
}
