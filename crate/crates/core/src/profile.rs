//! Signed squared trap frequency ω²(t) for the supported trajectory families.

use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::bangbang::BangBangPlan;
use crate::scaling::ScalingLaw;

/// ω²(t) in rad²/s² on `[0, tf]`; negative values are an expulsive parabola.
#[derive(Debug, Clone, PartialEq)]
pub enum FrequencyProfile {
    /// ω² = ω₀²/b⁴ − b̈/b from a designed scaling function.
    InverseEngineered { law: ScalingLaw, omega0: f64 },
    /// ω(t) = ω₀ + (ω_f − ω₀) t / t_f.
    Linear { omega0: f64, omegaf: f64, tf: f64 },
    /// ω̇/ω² held constant.
    Uniform { omega0: f64, omegaf: f64, tf: f64 },
    /// Three-jump piecewise-constant trajectory.
    BangBang(BangBangPlan),
    /// Time-independent ω², possibly negative. Reference profile.
    Constant { omega_sq: f64, tf: f64 },
}

impl FrequencyProfile {
    pub fn duration(&self) -> f64 {
        match self {
            FrequencyProfile::InverseEngineered { law, .. } => law.end(),
            FrequencyProfile::Linear { tf, .. }
            | FrequencyProfile::Uniform { tf, .. }
            | FrequencyProfile::Constant { tf, .. } => *tf,
            FrequencyProfile::BangBang(plan) => plan.tf(),
        }
    }

    /// ω(t) for the two ramp variants, which are defined through ω itself.
    fn ramp_omega(&self, t: f64) -> Option<f64> {
        match *self {
            FrequencyProfile::Linear { omega0, omegaf, tf } => Some(omega0 + (omegaf - omega0) * t / tf),
            FrequencyProfile::Uniform { omega0, omegaf, tf } => {
                Some(omega0 / (1.0 - (omegaf - omega0) * t / (tf * omegaf)))
            }
            _ => None,
        }
    }

    /// Signed ω²(t). The bang-bang variant returns ω₀² and ω_f² at exactly
    /// t = 0 and t = t_f.
    pub fn omega_sq(&self, t: f64) -> f64 {
        match self {
            FrequencyProfile::InverseEngineered { law, omega0 } => {
                let k = law.kinematics(t);
                omega0 * omega0 / k.b.powi(4) - k.bddot / k.b
            }
            FrequencyProfile::Linear { .. } | FrequencyProfile::Uniform { .. } => {
                let w = self.ramp_omega(t).unwrap();
                w * w
            }
            FrequencyProfile::BangBang(plan) => plan.omega_sq(t),
            FrequencyProfile::Constant { omega_sq, .. } => *omega_sq,
        }
    }

    /// Closed-form ω̇(t) where one exists.
    pub fn omega_dot(&self, t: f64) -> Option<f64> {
        match *self {
            FrequencyProfile::Linear { omega0, omegaf, tf } => Some((omegaf - omega0) / tf),
            FrequencyProfile::Uniform { omega0, omegaf, tf } => {
                // d/dt (1/ω) is constant
                let w = self.ramp_omega(t).unwrap();
                Some(w * w * (omegaf - omega0) / (tf * omegaf * omega0))
            }
            FrequencyProfile::Constant { .. } => Some(0.0),
            _ => None,
        }
    }

    /// Maximal subintervals of `[0, tf]` on which ω² is smooth.
    pub fn pieces(&self) -> Vec<(f64, f64)> {
        match self {
            FrequencyProfile::BangBang(plan) => vec![(0.0, plan.tau1), (plan.tau1, plan.tf())],
            _ => vec![(0.0, self.duration())],
        }
    }

    /// ω² as seen from inside piece `piece`, i.e. the one-sided limit at the
    /// piece's endpoints. Integrators use this so that no stage ever samples
    /// the isolated endpoint values of a jump.
    pub fn omega_sq_in_piece(&self, piece: usize, t: f64) -> f64 {
        match self {
            FrequencyProfile::BangBang(plan) => plan.segment_omega_sq(piece),
            _ => self.omega_sq(t),
        }
    }
}
