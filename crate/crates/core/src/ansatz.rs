//! Scaling functions that meet the six boundary conditions of a frictionless
//! expansion, optionally with a prescribed accumulated phase.
//!
//! All linear solves happen in the reduced time `s = t / tf`, where the
//! conditions on ḃ and b̈ become conditions on db/ds and d²b/ds² scaled by
//! `tf` and `tf²`. Working in `t` directly would give condition numbers of
//! order `tf⁻⁵`.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::model::OscillatorSpec;
use crate::numeric::linsolve::solve_dense;
use crate::numeric::{quad, roots};
use crate::scaling::{ScaledPolynomial, ScalingLaw};

/// Relative tolerance of [`phase_integral`].
pub const PHASE_REL_TOL: f64 = 1e-10;
/// Points scanned for a sign change of the phase residual.
pub const PHASE_SCAN_POINTS: usize = 512;
/// Absolute tolerance on the extra coefficient.
pub const PHASE_COEFF_TOL: f64 = 1e-12;

/// b and its first two derivatives at both ends of the expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryConditions {
    pub b0: f64,
    pub bdot0: f64,
    pub bddot0: f64,
    pub bf: f64,
    pub bdotf: f64,
    pub bddotf: f64,
}

impl BoundaryConditions {
    /// Starts in the initial eigenstate, ends in the final one: b goes from 1
    /// to γ with vanishing first and second derivatives at both ends.
    pub fn for_spec(spec: &OscillatorSpec) -> Self {
        Self { b0: 1.0, bdot0: 0.0, bddot0: 0.0, bf: spec.gamma(), bdotf: 0.0, bddotf: 0.0 }
    }

    /// Targets for `(p(0), p'(0), p''(0), p(1), p'(1), p''(1))` in the
    /// reduced time.
    pub fn scaled(&self, tf: f64) -> [f64; 6] {
        [self.b0, self.bdot0 * tf, self.bddot0 * tf * tf, self.bf, self.bdotf * tf, self.bddotf * tf * tf]
    }

    /// Absolute mismatches of a law at both ends, derivative terms scaled by
    /// `tf` and `tf²` so that all six are dimensionless.
    pub fn residuals(&self, law: &ScalingLaw, tf: f64) -> [f64; 6] {
        let k0 = law.kinematics(0.0);
        let k1 = law.kinematics(tf);
        [
            k0.b - self.b0,
            (k0.bdot - self.bdot0) * tf,
            (k0.bddot - self.bddot0) * tf * tf,
            k1.b - self.bf,
            (k1.bdot - self.bdotf) * tf,
            (k1.bddot - self.bddotf) * tf * tf,
        ]
    }
}

/// Solves for `a_0..a_5` of `p(s) = sum a_j s^j` given the six endpoint
/// targets, with any higher coefficients in `fixed` held at their values.
fn solve_endpoint_polynomial(targets: [f64; 6], fixed: &[f64]) -> Result<Vec<f64>> {
    let deg = 5 + fixed.len();
    // row r: which derivative order at which end
    let mut a = Vec::with_capacity(36);
    let mut rhs = Vec::with_capacity(6);
    for (row, &target) in targets.iter().enumerate() {
        let order = row % 3;
        let at_one = row >= 3;
        let term = |j: usize| -> f64 {
            if j < order {
                return 0.0;
            }
            let falling = (0..order).map(|k| (j - k) as f64).product::<f64>();
            if at_one || j == order {
                falling
            } else {
                0.0
            }
        };
        a.extend((0..6).map(term));
        let moved: f64 = fixed.iter().enumerate().map(|(i, &c)| c * term(6 + i)).sum();
        rhs.push(target - moved);
    }
    let mut coeffs = solve_dense(a, rhs)?;
    coeffs.extend_from_slice(fixed);
    debug_assert_eq!(coeffs.len(), deg + 1);
    Ok(coeffs)
}

/// The unique quintic meeting all six boundary conditions.
pub fn design_polynomial(spec: &OscillatorSpec) -> Result<ScalingLaw> {
    let bc = BoundaryConditions::for_spec(spec);
    let coeffs = solve_endpoint_polynomial(bc.scaled(spec.tf()), &[])?;
    let law = ScalingLaw::Polynomial(ScaledPolynomial::new(coeffs, spec.tf()));
    law.validate()?;
    Ok(law)
}

/// b = exp(p) with p a quintic. With ṗ = 0 at both ends, b̈ = 0 reduces to
/// p̈ = 0, so p solves the polynomial problem with target ln γ.
pub fn design_exp_polynomial(spec: &OscillatorSpec) -> Result<ScalingLaw> {
    let targets = [0.0, 0.0, 0.0, spec.gamma().ln(), 0.0, 0.0];
    let coeffs = solve_endpoint_polynomial(targets, &[])?;
    Ok(ScalingLaw::ExpPolynomial(ScaledPolynomial::new(coeffs, spec.tf())))
}

/// Degree-6 law whose s⁶ coefficient is `c`; the other six coefficients are
/// re-solved so the boundary conditions hold for every `c`.
pub fn sextic_with_coefficient(spec: &OscillatorSpec, c: f64) -> Result<ScalingLaw> {
    let bc = BoundaryConditions::for_spec(spec);
    let coeffs = solve_endpoint_polynomial(bc.scaled(spec.tf()), &[c])?;
    Ok(ScalingLaw::Polynomial(ScaledPolynomial::new(coeffs, spec.tf())))
}

/// Search half-width for the s⁶ coefficient.
pub fn phase_search_range(spec: &OscillatorSpec) -> f64 {
    1e3 * spec.gamma()
}

/// ∫₀^tf dt / b(t)².
pub fn phase_integral(law: &ScalingLaw, tf: f64) -> f64 {
    quad::integrate(
        |t| {
            let b = law.b(t);
            1.0 / (b * b)
        },
        0.0,
        tf,
        PHASE_REL_TOL,
        0.0,
    )
    .value
}

/// Boundary-compliant sextic with `∫₀^tf dt/b² = (ω_f/ω₀) t′`.
///
/// The s⁶ coefficient is scanned over `[-R, R]` at [`PHASE_SCAN_POINTS`]
/// points; coefficients whose law dips to b ≤ 0 are skipped. A sign change
/// of the phase residual is then refined with Brent's method.
pub fn design_phase_constrained(spec: &OscillatorSpec, tprime: f64) -> Result<ScalingLaw> {
    if !(tprime.is_finite() && tprime > 0.0) {
        return Err(Error::NonPositiveParameter { name: "tprime", value: tprime });
    }
    let target = spec.omegaf() / spec.omega0() * tprime;
    let tf = spec.tf();
    let residual = |c: f64| -> Option<f64> {
        let law = sextic_with_coefficient(spec, c).ok()?;
        law.validate().ok()?;
        Some(phase_integral(&law, tf) - target)
    };

    let range = phase_search_range(spec);
    let grid: Vec<f64> = (0..PHASE_SCAN_POINTS)
        .map(|i| -range + 2.0 * range * i as f64 / (PHASE_SCAN_POINTS - 1) as f64)
        .collect();
    let values: Vec<Option<f64>> = grid.iter().map(|&c| residual(c)).collect();

    let bracket = (0..grid.len() - 1).find_map(|i| match (values[i], values[i + 1]) {
        (Some(0.0), _) => Some((grid[i], grid[i])),
        (Some(g0), Some(g1)) if g0.signum() != g1.signum() => Some((grid[i], grid[i + 1])),
        _ => None,
    });
    let Some((lo, hi)) = bracket else {
        return Err(Error::NoBracket { lo: -range, hi: range });
    };
    let c = if lo == hi {
        lo
    } else {
        // validity is an interval in c, so the whole bracket is admissible
        roots::brent(|c| residual(c).unwrap_or(f64::INFINITY), lo, hi, PHASE_COEFF_TOL, 200)?
    };
    let law = sextic_with_coefficient(spec, c)?;
    law.validate()?;
    Ok(law)
}

/// Coefficient of s⁶ of a phase-constrained law.
pub fn extra_coefficient(law: &ScalingLaw) -> f64 {
    match law {
        ScalingLaw::Polynomial(p) => p.coeffs().get(6).copied().unwrap_or(0.0),
        _ => 0.0,
    }
}

/// Closed-form quintic `1 + (γ−1)(10s³ − 15s⁴ + 6s⁵)` in powers of s.
pub fn closed_form_quintic(gamma: f64) -> [f64; 6] {
    let g = gamma - 1.0;
    [1.0, 0.0, 0.0, 10.0 * g, -15.0 * g, 6.0 * g]
}
