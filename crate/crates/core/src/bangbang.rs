//! Three-jump trajectories: ω = ω₀ at t = 0, an expulsive segment with
//! ω² = −ω_I² for τ₁, a confining segment with ω² = ω₂² for τ₂, and ω = ω_f
//! at t_f.
//!
//! Each segment has a closed-form b(t). The first starts at rest at b = 1; the
//! second is anchored at rest at b = γ at t_f. Matching b and ḃ at τ₁ fixes
//! both τ₁ and t_f.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::model::OscillatorSpec;
use crate::numeric::roots;
use crate::profile::FrequencyProfile;
use crate::scaling::Kinematics;

/// Log-spaced τ₁ candidates in `(0, 10/ω_I]`.
pub const MATCH_SCAN_POINTS: usize = 2048;
/// Max-norm of the scaled matching residuals after polishing.
pub const MATCH_TOL: f64 = 1e-10;
/// Extra sine branches reported by [`matching_roots`] beyond the fastest one.
pub const EXTRA_BRANCHES: usize = 2;

/// A solved three-jump trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BangBangPlan {
    pub omega0: f64,
    /// Magnitude of the imaginary first-segment frequency.
    pub omega_i: f64,
    pub omega2: f64,
    pub tau1: f64,
    pub tau2: f64,
    pub gamma: f64,
}

impl BangBangPlan {
    pub fn tf(&self) -> f64 {
        self.tau1 + self.tau2
    }

    pub fn omegaf(&self) -> f64 {
        self.omega0 / (self.gamma * self.gamma)
    }

    /// b, ḃ, b̈ from the closed-form segments. At τ₁ the second segment's b̈
    /// is returned.
    pub fn kinematics(&self, t: f64) -> Kinematics {
        let (b, bdot, w_sq) = if t < self.tau1 {
            let (b, bdot) = segment1_b(self.omega_i, self.omega0, t);
            (b, bdot, -self.omega_i * self.omega_i)
        } else {
            // radicand is at least ω₀²/(ω₂²γ²) > 0 for a valid plan
            let (b, bdot) = segment2_b(self.omega2, self.omega0, self.gamma, self.tf(), t)
                .expect("valid plan has a positive second-segment radicand");
            (b, bdot, self.omega2 * self.omega2)
        };
        let bddot = self.omega0 * self.omega0 / (b * b * b) - w_sq * b;
        Kinematics { b, bdot, bddot }
    }

    /// Signed ω²: ω₀² at exactly t = 0, ω_f² at exactly t = t_f, otherwise
    /// the segment value (right-continuous at τ₁).
    pub fn omega_sq(&self, t: f64) -> f64 {
        if t == 0.0 {
            self.omega0 * self.omega0
        } else if t == self.tf() {
            self.omegaf() * self.omegaf()
        } else if t < self.tau1 {
            self.segment_omega_sq(0)
        } else {
            self.segment_omega_sq(1)
        }
    }

    /// ω² inside segment 0 (expulsive) or 1 (confining).
    pub fn segment_omega_sq(&self, piece: usize) -> f64 {
        if piece == 0 {
            -self.omega_i * self.omega_i
        } else {
            self.omega2 * self.omega2
        }
    }

    /// Scaled mismatches `((b₁ − b₂)/γ, (ḃ₁ − ḃ₂)/(γω₀))` at τ₁.
    pub fn matching_residual(&self) -> [f64; 2] {
        residual_and_jacobian(self.omega_i, self.omega2, self.omega0, self.gamma, [self.tau1, self.tf()])
            .map(|(r, _)| r)
            .unwrap_or([f64::INFINITY; 2])
    }
}

/// First segment, `b₁ = [1 + K sinh²(ω_I t)]^{1/2}` with `K = (ω₀² + ω_I²)/ω_I²`.
/// Returns `(b, ḃ)`.
pub fn segment1_b(omega_i: f64, omega0: f64, t: f64) -> (f64, f64) {
    let k = (omega0 * omega0 + omega_i * omega_i) / (omega_i * omega_i);
    let (sh, ch) = ((omega_i * t).sinh(), (omega_i * t).cosh());
    let b = (1.0 + k * sh * sh).sqrt();
    (b, k * omega_i * sh * ch / b)
}

/// Second segment, `b₂ = {γ² + (A − γ²) sin²[ω₂(t − t_f)]}^{1/2}` with
/// `A = ω₀²/(ω₂²γ²)`. Returns `(b, ḃ)`.
pub fn segment2_b(omega2: f64, omega0: f64, gamma: f64, tf: f64, t: f64) -> Result<(f64, f64)> {
    let g2 = gamma * gamma;
    let a = omega0 * omega0 / (omega2 * omega2 * g2);
    let theta = omega2 * (t - tf);
    let (sn, cs) = theta.sin_cos();
    let radicand = g2 + (a - g2) * sn * sn;
    if !(radicand > 0.0) {
        return Err(Error::DomainError { t, radicand });
    }
    let b = radicand.sqrt();
    Ok((b, (a - g2) * omega2 * sn * cs / b))
}

fn residual_and_jacobian(
    omega_i: f64,
    omega2: f64,
    omega0: f64,
    gamma: f64,
    x: [f64; 2],
) -> Result<([f64; 2], [[f64; 2]; 2])> {
    let [tau1, tf] = x;
    let (b1, v1) = segment1_b(omega_i, omega0, tau1);
    let (b2, v2) = segment2_b(omega2, omega0, gamma, tf, tau1)?;
    let a1 = omega0 * omega0 / b1.powi(3) + omega_i * omega_i * b1;
    let a2 = omega0 * omega0 / b2.powi(3) - omega2 * omega2 * b2;
    let (sb, sv) = (1.0 / gamma, 1.0 / (gamma * omega0));
    // b₂ depends on t − t_f, so ∂/∂t_f = −∂/∂t
    let r = [(b1 - b2) * sb, (v1 - v2) * sv];
    let jac = [[(v1 - v2) * sb, v2 * sb], [(a1 - a2) * sv, a2 * sv]];
    Ok((r, jac))
}

/// Mismatch of the second segment's conserved quantity
/// `ḃ² + ω₂²b² + ω₀²/b²` when the first segment is stopped at `u`.
///
/// Its derivative in `u` is `2ḃ₁ b₁ (ω_I² + ω₂²) > 0`, so it has at most one
/// root.
fn reduced_residual(omega_i: f64, omega2: f64, omega0: f64, gamma: f64, u: f64) -> f64 {
    let (b, v) = segment1_b(omega_i, omega0, u);
    let w2 = omega2 * omega2;
    let w0 = omega0 * omega0;
    (v * v + w2 * b * b + w0 / (b * b)) - (w2 * gamma * gamma + w0 / (gamma * gamma))
}

/// Time the second segment needs to carry `(b, ḃ > 0)` to rest at γ, on
/// sine branch `branch`.
fn segment2_duration(omega2: f64, omega0: f64, gamma: f64, b: f64, branch: usize) -> f64 {
    let g2 = gamma * gamma;
    let a = omega0 * omega0 / (omega2 * omega2 * g2);
    let s = ((g2 - b * b) / (g2 - a)).clamp(0.0, 1.0);
    (s.sqrt().asin() + branch as f64 * core::f64::consts::PI) / omega2
}

fn check_frequencies(omega_i: f64, omega2: f64) -> Result<()> {
    if !(omega_i > 0.0 && omega_i.is_finite()) {
        return Err(Error::NonPositiveParameter { name: "omega_i", value: omega_i });
    }
    if !(omega2 > 0.0 && omega2.is_finite()) {
        return Err(Error::NonPositiveParameter { name: "omega2", value: omega2 });
    }
    Ok(())
}

/// All polished `(τ₁, t_f)` solutions found by the scan, fastest first.
pub fn matching_roots(omega_i: f64, omega2: f64, spec: &OscillatorSpec) -> Result<Vec<BangBangPlan>> {
    check_frequencies(omega_i, omega2)?;
    let (w0, gamma) = (spec.omega0(), spec.gamma());
    let f = |u: f64| reduced_residual(omega_i, omega2, w0, gamma, u);

    let hi = 10.0 / omega_i;
    let lo = hi * 1e-9;
    let ratio = (hi / lo).powf(1.0 / (MATCH_SCAN_POINTS - 1) as f64);
    let grid: Vec<f64> = (0..MATCH_SCAN_POINTS).map(|i| lo * ratio.powi(i as i32)).collect();

    let mut plans = Vec::new();
    let mut prev = (grid[0], f(grid[0]));
    for &u in &grid[1..] {
        let cur = (u, f(u));
        if prev.1.is_finite() && cur.1.is_finite() && prev.1 * cur.1 <= 0.0 {
            let tau1 = roots::brent(f, prev.0, cur.0, 1e-16 * cur.0, 200)?;
            let (b1, _) = segment1_b(omega_i, w0, tau1);
            for branch in 0..=EXTRA_BRANCHES {
                let tau2 = segment2_duration(omega2, w0, gamma, b1, branch);
                if let Some(plan) = polish(omega_i, omega2, spec, tau1, tau1 + tau2) {
                    plans.push(plan);
                }
            }
        }
        prev = cur;
    }
    plans.sort_by(|a, b| a.tf().total_cmp(&b.tf()));
    Ok(plans)
}

fn polish(omega_i: f64, omega2: f64, spec: &OscillatorSpec, tau1: f64, tf: f64) -> Option<BangBangPlan> {
    let (w0, gamma) = (spec.omega0(), spec.gamma());
    let system = |x: [f64; 2]| {
        residual_and_jacobian(omega_i, omega2, w0, gamma, x)
            .unwrap_or(([f64::INFINITY; 2], [[0.0; 2]; 2]))
    };
    let admissible = |x: [f64; 2]| x[0] > 0.0 && x[1] > x[0];
    let sol = roots::newton_2d(system, admissible, [tau1, tf], MATCH_TOL, 50).ok()?;
    let [tau1, tf] = sol.x;
    Some(BangBangPlan { omega0: w0, omega_i, omega2, tau1, tau2: tf - tau1, gamma })
}

/// Solves the matching conditions and returns the fastest plan.
pub fn solve_matching(omega_i: f64, omega2: f64, spec: &OscillatorSpec) -> Result<BangBangPlan> {
    matching_roots(omega_i, omega2, spec)?.into_iter().next().ok_or(Error::NoSolution)
}

/// Shortest expansion time reachable with real frequencies between 0 and ∞,
/// `sqrt(1 − ω_f/ω₀) / sqrt(ω_f ω₀)`.
pub fn t_min(spec: &OscillatorSpec) -> Result<f64> {
    let (w0, wf) = (spec.omega0(), spec.omegaf());
    if wf >= w0 {
        return Err(Error::InvalidArgument("minimal time is defined for expansion only"));
    }
    Ok((1.0 - wf / w0).sqrt() / (wf * w0).sqrt())
}

pub fn bangbang_profile(plan: &BangBangPlan) -> FrequencyProfile {
    FrequencyProfile::BangBang(*plan)
}
