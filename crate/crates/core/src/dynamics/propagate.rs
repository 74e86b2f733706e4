//! Crank–Nicolson propagation of a grid wavefunction under
//! `H(t) = p²/2m + m ω²(t) x²/2`.
//!
//! Each step solves `(I + iΔt H/2ħ) ψ' = (I − iΔt H/2ħ) ψ` with H evaluated at
//! the step midpoint. The scheme is unitary for any Δt and any sign of ω².
//! The kinetic term is the nine-point eighth-order stencil, so the system is
//! banded with half-width four. It is complex symmetric with Hermitian part
//! I, which makes elimination without pivoting stable; a banded LDLᵀ
//! factorization is used.
//!
//! Steps never straddle a jump of the profile or a requested sample time.

use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;
use num_complex::Complex64;

use crate::dynamics::grid::{GridState, STENCIL};
use crate::error::{Error, Result};
use crate::model::OscillatorSpec;
use crate::profile::FrequencyProfile;
use crate::scaling::ScalingLaw;

/// Largest boundary probability density tolerated during a run.
pub const BOUNDARY_DENSITY_MAX: f64 = 1e-10;
/// Largest tolerated deviation of the norm from its initial value.
pub const NORM_DRIFT_MAX: f64 = 1e-6;

const BAND: usize = 4;

/// Grid and step size for a propagation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConfig {
    /// The grid spans `[-half_width, half_width]`.
    pub half_width: f64,
    pub points: usize,
    pub dt: f64,
}

impl GridConfig {
    /// Sized for level `n` driven by `law`: the grid covers the widest cloud
    /// and resolves the largest local wavenumber, which is reached at the
    /// edge of the cloud when the expansion is fastest.
    pub fn for_law(spec: &OscillatorSpec, law: &ScalingLaw, n: usize) -> Self {
        let (t0, t1) = (law.start(), law.end());
        let (mut b_max, mut bdot_max) = (0.0_f64, 0.0_f64);
        for i in 0..=LAW_SAMPLES {
            let k = law.kinematics(t0 + (t1 - t0) * i as f64 / LAW_SAMPLES as f64);
            b_max = b_max.max(k.b);
            bdot_max = bdot_max.max(k.bdot.abs());
        }
        Self::from_extent(spec, n, b_max, bdot_max)
    }

    /// Sized for level `n` under the closed-form quintic design of `spec`,
    /// whose peak ḃ is `15(γ − 1)/(8 t_f)`.
    pub fn default_for(spec: &OscillatorSpec, n: usize) -> Self {
        let g = spec.gamma();
        Self::from_extent(spec, n, g.max(1.0), 15.0 * (g - 1.0).abs() / (8.0 * spec.tf()))
    }

    fn from_extent(spec: &OscillatorSpec, n: usize, b_max: f64, bdot_max: f64) -> Self {
        let l0 = spec.length0();
        let y_edge = (2.0 * n as f64 + 1.0).sqrt() + EDGE_MARGIN;
        let half_width = y_edge * b_max.max(1.0) * l0;
        // chirp m ḃ x / (ħ b) at x = y_edge b l0, plus the initial state's own spread
        let k_max = spec.mass() * bdot_max * y_edge * l0 / spec.hbar() + y_edge / l0;
        let dx = DX_K / k_max;
        let points = ((2.0 * half_width / dx).ceil() as usize + 1).max(MIN_POINTS).next_multiple_of(256);
        let omega_kin = spec.hbar() * k_max * k_max / (2.0 * spec.mass());
        let dt = (DT_OMEGA / omega_kin).min(spec.tf() / MIN_STEPS);
        Self { half_width, points, dt }
    }

    pub fn x_min(&self) -> f64 {
        -self.half_width
    }

    pub fn x_max(&self) -> f64 {
        self.half_width
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.half_width / (self.points - 1) as f64
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.half_width > 0.0 && self.half_width.is_finite()) {
            return Err(Error::NonPositiveParameter { name: "half_width", value: self.half_width });
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::NonPositiveParameter { name: "dt", value: self.dt });
        }
        if self.points < 2 * BAND + 1 {
            return Err(Error::InvalidArgument("grid needs at least nine points"));
        }
        Ok(())
    }
}

/// The grid reaches this many oscillator lengths past the classical turning
/// point of the widest cloud.
pub const EDGE_MARGIN: f64 = 6.0;
/// Largest `k·dx` at the fastest chirp.
pub const DX_K: f64 = 1.2;
/// Largest `Ω·dt` for the kinetic frequency `Ω = ħk²/2m` at the fastest chirp.
pub const DT_OMEGA: f64 = 1.2;
/// At least this many steps per run.
pub const MIN_STEPS: f64 = 500.0;
pub const MIN_POINTS: usize = 512;
const LAW_SAMPLES: usize = 2000;

/// Symmetric composition of second-order steps, sixth order overall
/// (Yoshida's seven-stage solution A). Entry `j` is `(weight, slot)`; stages
/// of equal length share a factorization slot so that constant stretches
/// factor each length once.
const COMPOSITION: [(f64, usize); 7] = {
    let w1 = -1.177_679_984_178_87;
    let w2 = 0.235_573_213_359_357;
    let w3 = 0.784_513_610_477_560;
    let w0 = 1.0 - 2.0 * (w1 + w2 + w3);
    [(w3, 3), (w2, 2), (w1, 1), (w0, 0), (w1, 1), (w2, 2), (w3, 3)]
};
const SLOTS: usize = 4;

/// LDLᵀ factors of `I + i h H / 2ħ` for one ω² and one step length.
#[derive(Debug, Clone)]
struct Factors {
    // l[i][k - 1] = L[i, i - k]
    l: Vec<[Complex64; BAND]>,
    d_inv: Vec<Complex64>,
    key: Option<(f64, f64)>,
}

/// Reusable workspace for one grid size.
#[derive(Debug, Clone)]
pub struct Propagator {
    mass: f64,
    hbar: f64,
    x_min: f64,
    dx: f64,
    x_sq: Vec<f64>,
    factors: [Factors; SLOTS],
    work: Vec<Complex64>,
}

impl Propagator {
    pub fn new(spec: &OscillatorSpec, x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if n < 2 * BAND + 1 {
            return Err(Error::InvalidArgument("grid needs at least nine points"));
        }
        let dx = (x_max - x_min) / (n - 1) as f64;
        let zero = Complex64::new(0.0, 0.0);
        let factors = Factors { l: vec![[zero; BAND]; n], d_inv: vec![zero; n], key: None };
        Ok(Self {
            mass: spec.mass(),
            hbar: spec.hbar(),
            x_min,
            dx,
            x_sq: (0..n).map(|i| (x_min + i as f64 * dx).powi(2)).collect(),
            factors: core::array::from_fn(|_| factors.clone()),
            work: vec![zero; n],
        })
    }

    /// Factors `I + i h H / 2ħ` for the given ω² into `slot`, unless the
    /// slot already holds it.
    fn factor(&mut self, slot: usize, omega_sq: f64, h: f64) {
        let f = &mut self.factors[slot];
        if f.key == Some((omega_sq, h)) {
            return;
        }
        f.key = Some((omega_sq, h));
        let alpha = h / (2.0 * self.hbar);
        let kin = -self.hbar * self.hbar / (2.0 * self.mass * self.dx * self.dx);
        let off: [Complex64; BAND + 1] = core::array::from_fn(|k| Complex64::new(0.0, alpha * kin * STENCIL[k]));
        let pot = alpha * 0.5 * self.mass * omega_sq;
        for i in 0..self.x_sq.len() {
            let diag = Complex64::new(1.0, off[0].im + pot * self.x_sq[i]);
            let (row, d_inv) = if i >= BAND {
                factor_row::<BAND>(&off, diag, &f.l[i - BAND..i], &f.d_inv[i - BAND..i])
            } else {
                factor_row_partial(&off, diag, i, &f.l[..i], &f.d_inv[..i])
            };
            f.l[i] = row;
            f.d_inv[i] = d_inv;
        }
    }

    /// Overwrites `psi` with `2 A⁻¹ ψ − ψ`, which equals `A⁻¹ (2I − A) ψ`.
    fn apply(&mut self, slot: usize, psi: &mut [Complex64]) {
        let f = &self.factors[slot];
        let n = psi.len();
        let y = &mut self.work[..n];
        for i in 0..n {
            let mut s = psi[i];
            let row = &f.l[i];
            // newest term last keeps the recurrence's critical path short
            for k in (1..=BAND.min(i)).rev() {
                s -= row[k - 1] * y[i - k];
            }
            y[i] = s;
        }
        for (v, d) in y.iter_mut().zip(&f.d_inv) {
            *v *= d;
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in (1..=BAND.min(n - 1 - i)).rev() {
                s -= f.l[i + k][k - 1] * y[i + k];
            }
            y[i] = s;
        }
        for (p, v) in psi.iter_mut().zip(y.iter()) {
            *p = 2.0 * v - *p;
        }
    }

    /// One second-order Crank–Nicolson step of length `h` with H frozen at
    /// `omega_sq`.
    pub fn step(&mut self, psi: &mut [Complex64], omega_sq: f64, h: f64) {
        self.factor(0, omega_sq, h);
        self.apply(0, psi);
    }

    /// One sixth-order step from `t` to `t + h` inside piece `piece`.
    fn composed_step(&mut self, profile: &FrequencyProfile, piece: usize, psi: &mut [Complex64], t: f64, h: f64) {
        let mut s = t;
        for &(w, slot) in &COMPOSITION {
            let sub = w * h;
            let w2 = profile.omega_sq_in_piece(piece, s + 0.5 * sub);
            self.factor(slot, w2, sub);
            self.apply(slot, psi);
            s += sub;
        }
    }

    /// Evolves `state` to the end of `profile`, stopping exactly at each
    /// time in `samples` inside the run and calling `on_sample` there.
    ///
    /// Steps are at most `dt` and sixth order in time: each is a symmetric
    /// composition of Crank–Nicolson substeps with H at the substep midpoint.
    pub fn evolve(
        &mut self,
        profile: &FrequencyProfile,
        mut state: GridState,
        dt: f64,
        samples: &[f64],
        mut on_sample: impl FnMut(&GridState) -> Result<()>,
    ) -> Result<GridState> {
        if state.len() != self.x_sq.len() || state.x_min() != self.x_min {
            return Err(Error::GridMismatch);
        }
        if !(dt > 0.0) {
            return Err(Error::NonPositiveParameter { name: "dt", value: dt });
        }
        let t0 = state.time();
        let tf = profile.duration();
        let norm0 = state.norm_sq();
        let mut sample_iter = samples.iter().copied().filter(|&s| s >= t0 && s <= tf).peekable();
        while sample_iter.peek() == Some(&t0) {
            on_sample(&state)?;
            sample_iter.next();
        }

        for (piece, (lo, hi)) in profile.pieces().into_iter().enumerate() {
            let lo = lo.max(t0);
            if hi <= lo {
                continue;
            }
            let mut t = lo;
            while t < hi {
                let stop = match sample_iter.peek() {
                    Some(&s) if s < hi => s,
                    _ => hi,
                };
                let steps = ((stop - t) / dt).ceil().max(1.0) as usize;
                let h = (stop - t) / steps as f64;
                for k in 0..steps {
                    let start = t + k as f64 * h;
                    self.composed_step(profile, piece, state.amplitudes_mut(), start, h);
                    let edge = state.boundary_density();
                    if edge > BOUNDARY_DENSITY_MAX {
                        return Err(Error::GridTooSmall { t: start + h, density: edge });
                    }
                    let drift = (state.norm_sq() - norm0).abs();
                    if drift > NORM_DRIFT_MAX {
                        return Err(Error::NormDrift { t: start + h, deviation: drift });
                    }
                }
                t = stop;
                state.set_time(t);
                while sample_iter.peek().is_some_and(|&s| s <= t) {
                    on_sample(&state)?;
                    sample_iter.next();
                }
            }
        }
        state.set_time(tf);
        Ok(state)
    }
}

/// One row of the banded LDLᵀ factorization with all `K` predecessors
/// present. `prev_l[j]` and `prev_d_inv[j]` belong to row `i − K + j`.
#[inline(always)]
fn factor_row<const K: usize>(
    off: &[Complex64; BAND + 1],
    diag: Complex64,
    prev_l: &[[Complex64; BAND]],
    prev_d_inv: &[Complex64],
) -> ([Complex64; BAND], Complex64) {
    let mut row = [Complex64::new(0.0, 0.0); BAND];
    // w[k - 1] = L[i, i - k] d[i - k], filled from the farthest column inward
    let mut w = [Complex64::new(0.0, 0.0); BAND];
    let mut di = diag;
    for k in (1..=K).rev() {
        let lj = &prev_l[K - k];
        let mut s = off[k];
        for m in k + 1..=K {
            s -= w[m - 1] * lj[m - k - 1];
        }
        w[k - 1] = s;
        row[k - 1] = s * prev_d_inv[K - k];
        di -= s * row[k - 1];
    }
    (row, di.inv())
}

/// The first `BAND` rows, which have fewer predecessors.
fn factor_row_partial(
    off: &[Complex64; BAND + 1],
    diag: Complex64,
    i: usize,
    prev_l: &[[Complex64; BAND]],
    prev_d_inv: &[Complex64],
) -> ([Complex64; BAND], Complex64) {
    match i {
        0 => ([Complex64::new(0.0, 0.0); BAND], diag.inv()),
        1 => factor_row::<1>(off, diag, prev_l, prev_d_inv),
        2 => factor_row::<2>(off, diag, prev_l, prev_d_inv),
        3 => factor_row::<3>(off, diag, prev_l, prev_d_inv),
        _ => factor_row::<BAND>(off, diag, prev_l, prev_d_inv),
    }
}

/// Evolves `psi0` under `profile` to its final time with steps of at most `dt`.
pub fn propagate(profile: &FrequencyProfile, psi0: GridState, spec: &OscillatorSpec, dt: f64) -> Result<GridState> {
    let mut prop = Propagator::new(spec, psi0.x_min(), psi0.x_max(), psi0.len())?;
    prop.evolve(profile, psi0, dt, &[], |_| Ok(()))
}
