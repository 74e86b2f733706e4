//! The Ermakov equation `b̈ + ω²(t) b = ω₀²/b³` in both directions.
//!
//! [`inverse_frequency`] reads ω² off a designed b; [`ermakov_forward`]
//! integrates b for a given ω² and is the independent check on the design.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::model::OscillatorSpec;
use crate::numeric::ode::{self, Tolerance};
use crate::profile::FrequencyProfile;
use crate::scaling::{Node, NumericLaw, ScalingLaw};

/// Default local relative tolerance of [`ermakov_forward`].
pub const DEFAULT_TOL: f64 = 1e-10;
/// Allowed band for b during forward integration.
pub const B_RANGE: (f64, f64) = (1e-9, 1e9);
/// Relative tolerance on ω²(0) = ω₀² and ω²(t_f) = ω₀²/b(t_f)⁴.
pub const ENDPOINT_TOL: f64 = 1e-9;

const MAX_STEPS: usize = 5_000_000;

/// ω²(t) = ω₀²/b⁴ − b̈/b.
///
/// The law must start in equilibrium with the initial trap (b = 1, ḃ = b̈ = 0)
/// and end at rest (b̈ = 0) so that both endpoint frequencies are exact.
pub fn inverse_frequency(law: &ScalingLaw, omega0: f64) -> Result<FrequencyProfile> {
    law.validate()?;
    let profile = FrequencyProfile::InverseEngineered { law: law.clone(), omega0 };
    let tf = law.end();
    let w0_sq = omega0 * omega0;
    let expected_end = w0_sq / law.b(tf).powi(4);
    let start_ok = (profile.omega_sq(0.0) - w0_sq).abs() <= ENDPOINT_TOL * w0_sq;
    let end_ok = (profile.omega_sq(tf) - expected_end).abs() <= ENDPOINT_TOL * expected_end;
    if !(start_ok && end_ok) {
        return Err(Error::InvalidArgument(
            "scaling law does not meet the rest conditions at both ends",
        ));
    }
    Ok(profile)
}

/// b̈ from the Ermakov equation.
pub fn ermakov_acceleration(b: f64, omega_sq: f64, omega0: f64) -> f64 {
    omega0 * omega0 / (b * b * b) - omega_sq * b
}

/// Integrates the Ermakov equation from `(b0, bdot0)` at `t_span[0]`.
///
/// The integrator lands on every time in `t_span` and on every jump of the
/// profile. The returned law interpolates the accepted steps with quintic
/// Hermite polynomials using the exact b̈ at each node.
pub fn ermakov_forward(
    profile: &FrequencyProfile,
    b0: f64,
    bdot0: f64,
    omega0: f64,
    t_span: &[f64],
    tol: f64,
) -> Result<ScalingLaw> {
    if !(b0 > 0.0) {
        return Err(Error::NonPositiveParameter { name: "b0", value: b0 });
    }
    if !(tol > 0.0 && tol <= 1e-4) {
        return Err(Error::InvalidArgument("tolerance must lie in (0, 1e-4]"));
    }
    if t_span.len() < 2 || t_span.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidArgument("t_span must be strictly increasing with at least two points"));
    }
    let (t_start, t_end) = (t_span[0], t_span[t_span.len() - 1]);
    let tolerance = Tolerance { rtol: tol, atol: [tol, tol * omega0], max_steps: MAX_STEPS };

    let pieces: Vec<(usize, f64, f64)> = profile
        .pieces()
        .into_iter()
        .enumerate()
        .filter_map(|(i, (lo, hi))| {
            let (lo, hi) = (lo.max(t_start), hi.min(t_end));
            (hi > lo).then_some((i, lo, hi))
        })
        .collect();
    // past the profile's window, keep using its last piece
    let pieces = if pieces.is_empty() {
        alloc::vec![(profile.pieces().len() - 1, t_start, t_end)]
    } else {
        let mut p = pieces;
        let last = p.len() - 1;
        p[0].1 = t_start;
        p[last].2 = t_end;
        p
    };

    let mut nodes: Vec<Node> = Vec::new();
    let mut y = [b0, bdot0];
    let mut t = t_start;
    for (piece, _, hi) in pieces {
        let rhs = |t: f64, y: [f64; 2]| [y[1], ermakov_acceleration(y[0], profile.omega_sq_in_piece(piece, t), omega0)];
        let acc_here = ermakov_acceleration(y[0], profile.omega_sq_in_piece(piece, t), omega0);
        match nodes.last_mut() {
            Some(last) => last.bddot_right = acc_here,
            None => nodes.push(Node { t, b: y[0], bdot: y[1], bddot_left: acc_here, bddot_right: acc_here }),
        }
        let stops: Vec<f64> = t_span
            .iter()
            .copied()
            .filter(|&s| s > t && s < hi)
            .chain(core::iter::once(hi))
            .collect();
        y = ode::integrate(rhs, t, y, &stops, tolerance, |ts, ys, dys| {
            if !(ys[0] > B_RANGE.0 && ys[0] < B_RANGE.1) {
                return Err(Error::BlowUp { t: ts, b: ys[0] });
            }
            nodes.push(Node { t: ts, b: ys[0], bdot: ys[1], bddot_left: dys[1], bddot_right: dys[1] });
            Ok(())
        })?;
        t = hi;
    }
    Ok(ScalingLaw::Numeric(NumericLaw::new(nodes)?))
}

/// Largest `|√2 ω̇ / (8 ω²)|` over `n_samples` uniform times on `[0, t_f]`.
///
/// ω̇ is taken in closed form for the ramps and by five-point differences
/// (step `t_f / 10⁶`) otherwise. Any sampled ω² ≤ 0 is an error.
pub fn adiabaticity_margin(profile: &FrequencyProfile, n_samples: usize) -> Result<f64> {
    if n_samples < 2 {
        return Err(Error::InvalidArgument("need at least two samples"));
    }
    let tf = profile.duration();
    let omega = |t: f64| -> Result<f64> {
        let w2 = profile.omega_sq(t);
        if w2 > 0.0 {
            Ok(w2.sqrt())
        } else {
            Err(Error::NegativeFrequencyRegion { t, omega_sq: w2 })
        }
    };
    let h = tf * 1e-6;
    let mut worst = 0.0_f64;
    for i in 0..n_samples {
        let t = tf * i as f64 / (n_samples - 1) as f64;
        let w = omega(t)?;
        let wdot = match profile.omega_dot(t) {
            Some(d) => d,
            None => {
                // shift the stencil inward near the ends so it stays in [0, tf]
                let offset = if t - 2.0 * h < 0.0 {
                    0
                } else if t + 2.0 * h > tf {
                    4
                } else {
                    2
                };
                let base = t - offset as f64 * h;
                let f: Vec<f64> = (0..5).map(|k| omega(base + k as f64 * h)).collect::<Result<_>>()?;
                let stencil: [f64; 5] = match offset {
                    0 => [-25.0, 48.0, -36.0, 16.0, -3.0],
                    4 => [3.0, -16.0, 36.0, -48.0, 25.0],
                    _ => [1.0, -8.0, 0.0, 8.0, -1.0],
                };
                stencil.iter().zip(&f).map(|(c, v)| c * v).sum::<f64>() / (12.0 * h)
            }
        };
        worst = worst.max((2f64.sqrt() * wdot / (8.0 * w * w)).abs());
    }
    Ok(worst)
}

/// ω changes linearly from ω₀ to ω_f.
pub fn linear_ramp(spec: &OscillatorSpec) -> FrequencyProfile {
    FrequencyProfile::Linear { omega0: spec.omega0(), omegaf: spec.omegaf(), tf: spec.tf() }
}

/// ω̇/ω² constant, i.e. ω(t) = ω₀ / [1 − (ω_f − ω₀) t / (t_f ω_f)].
pub fn uniform_ramp(spec: &OscillatorSpec) -> Result<FrequencyProfile> {
    if spec.omegaf() >= spec.omega0() {
        return Err(Error::InvalidArgument("uniform ramp is defined for expansion only"));
    }
    Ok(FrequencyProfile::Uniform { omega0: spec.omega0(), omegaf: spec.omegaf(), tf: spec.tf() })
}

/// Ground-state energy at t_f after driving with `profile`, relative to the
/// adiabatic value ½ħω_f, minus one.
pub fn ground_state_excess(spec: &OscillatorSpec, profile: &FrequencyProfile, tol: f64) -> Result<f64> {
    let tf = profile.duration();
    let law = ermakov_forward(profile, 1.0, 0.0, spec.omega0(), &[0.0, tf], tol)?;
    let k = law.kinematics(tf);
    let w0 = spec.omega0();
    let wf_sq = profile.omega_sq(tf);
    // <H>/(ħ ω0) for n = 0, then relative to ½ ω_f / ω0
    let energy = (k.bdot * k.bdot + wf_sq * k.b * k.b + w0 * w0 / (k.b * k.b)) / (4.0 * w0 * w0);
    Ok(energy / (0.5 * spec.omegaf() / w0) - 1.0)
}
