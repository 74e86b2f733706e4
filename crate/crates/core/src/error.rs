use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Failure modes shared across design, integration and propagation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` must be finite and positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("boundary-condition system is singular")]
    SingularSystem,

    #[error("scaling function is not positive: b({t}) = {b}")]
    PositivityViolated { t: f64, b: f64 },

    #[error("no sign change of the phase residual over [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },

    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("scaling function left (1e-9, 1e9) at t = {t}: b = {b}")]
    BlowUp { t: f64, b: f64 },

    #[error("integrator step size underflow at t = {t} (h = {h})")]
    StepUnderflow { t: f64, h: f64 },

    #[error("squared frequency is not positive at t = {t}: {omega_sq}")]
    NegativeFrequencyRegion { t: f64, omega_sq: f64 },

    #[error("segment radicand is not positive at t = {t}: {radicand}")]
    DomainError { t: f64, radicand: f64 },

    #[error("bang-bang matching conditions have no solution on the scan grid")]
    NoSolution,

    #[error("expanding mode requires omega0^2 > 0")]
    InvalidMode,

    #[error("wavefunction reaches the grid edge at t = {t}: |psi|^2 = {density}")]
    GridTooSmall { t: f64, density: f64 },

    #[error("norm drifted by {deviation} at t = {t}")]
    NormDrift { t: f64, deviation: f64 },

    #[error("grid states do not share the same grid")]
    GridMismatch,
}
