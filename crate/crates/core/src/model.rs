//! Physical parameters of the expansion and their validation.

use core::f64::consts::PI;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};

/// Parameters of a one-dimensional harmonic trap expansion.
///
/// Angular frequencies are in rad/s and times in seconds. Mass and ħ default
/// to one; every observable the crate reports is a ratio that does not
/// depend on them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorSpec {
    omega0: f64,
    omegaf: f64,
    tf: f64,
    mass: f64,
    hbar: f64,
}

impl OscillatorSpec {
    /// Validates and builds a spec. Compression (`omegaf > omega0`) is
    /// accepted as well as expansion.
    pub fn new(omega0: f64, omegaf: f64, tf: f64, mass: f64, hbar: f64) -> Result<Self> {
        for (name, value) in [
            ("omega0", omega0),
            ("omegaf", omegaf),
            ("tf", tf),
            ("mass", mass),
            ("hbar", hbar),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::NonPositiveParameter { name, value });
            }
        }
        Ok(Self { omega0, omegaf, tf, mass, hbar })
    }

    /// 250 Hz to 2.5 Hz in 25 ms with ħ = m = 1.
    pub fn default_expansion() -> Self {
        Self {
            omega0: hz_to_angular(250.0),
            omegaf: hz_to_angular(2.5),
            tf: 0.025,
            mass: 1.0,
            hbar: 1.0,
        }
    }

    /// Same trap, different duration.
    pub fn with_tf(&self, tf: f64) -> Result<Self> {
        Self::new(self.omega0, self.omegaf, tf, self.mass, self.hbar)
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn omegaf(&self) -> f64 {
        self.omegaf
    }

    pub fn tf(&self) -> f64 {
        self.tf
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Final value of the scaling function, `sqrt(omega0 / omegaf)`.
    pub fn gamma(&self) -> f64 {
        (self.omega0 / self.omegaf).sqrt()
    }

    /// Oscillator length `sqrt(hbar / (m omega0))` of the initial trap.
    pub fn length0(&self) -> f64 {
        (self.hbar / (self.mass * self.omega0)).sqrt()
    }
}

/// Convenience alias for [`OscillatorSpec::new`].
pub fn make_spec(omega0: f64, omegaf: f64, tf: f64, mass: f64, hbar: f64) -> Result<OscillatorSpec> {
    OscillatorSpec::new(omega0, omegaf, tf, mass, hbar)
}

/// Converts an ordinary frequency in Hz to an angular frequency in rad/s.
pub fn hz_to_angular(f: f64) -> f64 {
    2.0 * PI * f
}
