//! Dormand-Prince 5(4) embedded Runge-Kutta integrator for two-component
//! systems, with forced stops at caller-supplied output times.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A21: f64 = 1.0 / 5.0;
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0];
const A6: [f64; 5] = [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0];
// fifth-order weights (also the seventh stage, FSAL)
const B: [f64; 6] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0];
// fifth minus embedded fourth order
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

pub type State = [f64; 2];

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub rtol: f64,
    pub atol: [f64; 2],
    pub max_steps: usize,
}

fn axpy(y: State, h: f64, terms: &[(f64, State)]) -> State {
    let mut out = y;
    for &(c, k) in terms {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

/// Integrates `y' = f(t, y)` from `t0` through every time in `stops`
/// (ascending, all `> t0`), landing on each exactly.
///
/// `on_step(t, y, dy)` is called after every accepted step, including the
/// ones that land on a stop; returning an error aborts the integration.
pub fn integrate<F, O>(mut f: F, t0: f64, y0: State, stops: &[f64], tol: Tolerance, mut on_step: O) -> Result<State>
where
    F: FnMut(f64, State) -> State,
    O: FnMut(f64, State, State) -> Result<()>,
{
    let Some(&t_end) = stops.last() else {
        return Ok(y0);
    };
    let scale = |y: State, z: State, i: usize| tol.atol[i] + tol.rtol * y[i].abs().max(z[i].abs());
    let err_norm = |e: State, y: State, z: State| {
        let a = e[0] / scale(y, z, 0);
        let b = e[1] / scale(y, z, 1);
        (0.5 * (a * a + b * b)).sqrt()
    };

    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, y);

    // Hairer's starting-step heuristic
    let mut h = {
        let d0 = err_norm(y, y, y);
        let d1 = err_norm(k1, y, y);
        let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        let h0 = h0.min(t_end - t0);
        let y1 = axpy(y, h0, &[(1.0, k1)]);
        let k = f(t0 + h0, y1);
        let d2 = err_norm([k[0] - k1[0], k[1] - k1[1]], y, y) / h0;
        let h1 = if d1.max(d2) <= 1e-15 {
            (h0 * 1e-3).max(1e-6)
        } else {
            (0.01 / d1.max(d2)).powf(0.2)
        };
        (100.0 * h0).min(h1)
    };

    let mut next_stop = 0;
    let mut steps = 0;
    while next_stop < stops.len() {
        let target = stops[next_stop];
        if steps >= tol.max_steps {
            return Err(Error::StepUnderflow { t, h });
        }
        let mut landing = false;
        let mut h_try = h;
        if t + h_try >= target || (target - t - h_try) < 1e-3 * h_try {
            h_try = target - t;
            landing = true;
        }
        if h_try <= 1e-14 * t.abs().max(1e-300) {
            return Err(Error::StepUnderflow { t, h: h_try });
        }

        let k2 = f(t + C[1] * h_try, axpy(y, h_try, &[(A21, k1)]));
        let k3 = f(t + C[2] * h_try, axpy(y, h_try, &[(A3[0], k1), (A3[1], k2)]));
        let k4 = f(t + C[3] * h_try, axpy(y, h_try, &[(A4[0], k1), (A4[1], k2), (A4[2], k3)]));
        let k5 = f(
            t + C[4] * h_try,
            axpy(y, h_try, &[(A5[0], k1), (A5[1], k2), (A5[2], k3), (A5[3], k4)]),
        );
        let k6 = f(
            t + C[5] * h_try,
            axpy(y, h_try, &[(A6[0], k1), (A6[1], k2), (A6[2], k3), (A6[3], k4), (A6[4], k5)]),
        );
        let t_new = if landing { target } else { t + h_try };
        let y_new = axpy(y, h_try, &[(B[0], k1), (B[2], k3), (B[3], k4), (B[4], k5), (B[5], k6)]);
        let k7 = f(t_new, y_new);
        let ks = [k1, k2, k3, k4, k5, k6, k7];
        let mut e = [0.0; 2];
        for (c, k) in E.iter().zip(ks) {
            e[0] += h_try * c * k[0];
            e[1] += h_try * c * k[1];
        }
        let err = err_norm(e, y, y_new);
        steps += 1;

        if !err.is_finite() {
            h = 0.2 * h_try;
            continue;
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        if err <= 1.0 {
            t = t_new;
            y = y_new;
            k1 = k7;
            on_step(t, y, k1)?;
            if landing {
                next_stop += 1;
                // keep the unclipped proposal rather than the shortened landing step
                h = h.max(h_try * factor);
            } else {
                h = h_try * factor;
            }
        } else {
            h = h_try * factor.min(1.0);
        }
    }
    Ok(y)
}
