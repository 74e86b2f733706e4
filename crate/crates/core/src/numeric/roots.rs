//! Bracketing and Newton-type root finders.

use crate::error::{Error, Result};

/// Brent's method on a bracket `[a, b]` with `f(a)` and `f(b)` of opposite sign.
///
/// Stops when the bracket is narrower than `xtol` (plus a few ulps of the
/// iterate) or `f` hits zero exactly.
pub fn brent<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, xtol: f64, max_iter: usize) -> Result<f64> {
    let (mut a, mut b) = (a, b);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return Err(Error::NoBracket { lo: a, hi: b });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            // inverse quadratic interpolation, or secant when a == c
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * m * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    Err(Error::NoConvergence { iterations: max_iter })
}

/// Outcome of [`newton_2d`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Newton2 {
    pub x: [f64; 2],
    pub residual: [f64; 2],
    pub iterations: usize,
}

/// Damped Newton iteration for two equations in two unknowns.
///
/// `system` returns the residual and its Jacobian `[[dr0/dx0, dr0/dx1],
/// [dr1/dx0, dr1/dx1]]`; `admissible` rejects iterates outside the domain, in
/// which case the step is halved. Converges when the max-norm of the
/// residual is at most `ftol`.
pub fn newton_2d<S, A>(mut system: S, admissible: A, x0: [f64; 2], ftol: f64, max_iter: usize) -> Result<Newton2>
where
    S: FnMut([f64; 2]) -> ([f64; 2], [[f64; 2]; 2]),
    A: Fn([f64; 2]) -> bool,
{
    let norm = |r: [f64; 2]| r[0].abs().max(r[1].abs());
    let mut x = x0;
    let (mut r, mut jac) = system(x);
    for it in 0..max_iter {
        if norm(r) <= ftol {
            return Ok(Newton2 { x, residual: r, iterations: it });
        }
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let step = [
            (jac[1][1] * r[0] - jac[0][1] * r[1]) / det,
            (jac[0][0] * r[1] - jac[1][0] * r[0]) / det,
        ];
        let mut lambda = 1.0;
        let mut accepted = false;
        while lambda > 1e-10 {
            let trial = [x[0] - lambda * step[0], x[1] - lambda * step[1]];
            if admissible(trial) {
                let (rt, jt) = system(trial);
                if norm(rt) < norm(r) || norm(rt) <= ftol {
                    x = trial;
                    r = rt;
                    jac = jt;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    if norm(r) <= ftol {
        Ok(Newton2 { x, residual: r, iterations: max_iter })
    } else {
        Err(Error::NoConvergence { iterations: max_iter })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_cubic_root() {
        let root = brent(|x| x * x * x - 2.0 * x - 5.0, 2.0, 3.0, 1e-14, 100).unwrap();
        assert!((root - 2.094_551_481_542_326_5).abs() < 1e-13);
    }

    #[test]
    fn brent_requires_sign_change() {
        assert!(matches!(brent(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 50), Err(Error::NoBracket { .. })));
    }

    #[test]
    fn brent_handles_flat_tails() {
        let root = brent(|x: f64| (x - 0.3).tanh().powi(3), -5.0, 40.0, 1e-12, 200).unwrap();
        assert!((root - 0.3).abs() < 1e-4);
    }

    #[test]
    fn newton_solves_circle_line_intersection() {
        // x^2 + y^2 = 4, y = x  -> (sqrt2, sqrt2) from the positive quadrant
        let sol = newton_2d(
            |[x, y]| ([x * x + y * y - 4.0, y - x], [[2.0 * x, 2.0 * y], [-1.0, 1.0]]),
            |[x, y]| x > 0.0 && y > 0.0,
            [3.0, 0.5],
            1e-14,
            50,
        )
        .unwrap();
        let s = 2f64.sqrt();
        assert!((sol.x[0] - s).abs() < 1e-13 && (sol.x[1] - s).abs() < 1e-13);
    }
}
