//! Hermite polynomials and normalized Hermite functions.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

/// Physicists' Hermite polynomial `H_n(y)`. Overflows for large `n`; use
/// [`hermite_functions`] for wavefunctions.
pub fn hermite(n: usize, y: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let next = 2.0 * y * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `φ_0(y) ..= φ_{n_max}(y)` where
/// `φ_n(y) = (2ⁿ n! √π)^{-1/2} H_n(y) e^{-y²/2}`, orthonormal in `y`.
///
/// The normalization is carried through the recursion, so nothing overflows
/// for moderate `n`.
pub fn hermite_functions(n_max: usize, y: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let phi0 = core::f64::consts::PI.powf(-0.25) * (-0.5 * y * y).exp();
    out.push(phi0);
    if n_max >= 1 {
        out.push(core::f64::consts::SQRT_2 * y * phi0);
    }
    for k in 1..n_max {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * y * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

/// Single normalized Hermite function `φ_n(y)`.
pub fn hermite_function(n: usize, y: f64) -> f64 {
    hermite_functions(n, y)[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_polynomials() {
        for y in [-1.3, 0.0, 0.4, 2.2] {
            assert_eq!(hermite(0, y), 1.0);
            assert_eq!(hermite(1, y), 2.0 * y);
            assert!((hermite(2, y) - (4.0 * y * y - 2.0)).abs() < 1e-12);
            assert!((hermite(3, y) - (8.0 * y * y * y - 12.0 * y)).abs() < 1e-12);
        }
    }

    #[test]
    fn normalized_functions_match_polynomials() {
        let mut fact = 1.0;
        for n in 0..12 {
            if n > 0 {
                fact *= n as f64;
            }
            let norm = (2f64.powi(n as i32) * fact * core::f64::consts::PI.sqrt()).sqrt();
            for y in [-2.5, -0.3, 0.0, 1.1, 3.0] {
                let direct = hermite(n, y) * (-0.5 * y * y).exp() / norm;
                assert!((hermite_function(n, y) - direct).abs() < 1e-12, "n={n} y={y}");
            }
        }
    }

    #[test]
    fn high_order_stays_finite() {
        for y in [0.0, 5.0, 12.0, 40.0] {
            assert!(hermite_functions(120, y).iter().all(|v| v.is_finite()));
        }
    }

    #[test]
    fn orthonormal_by_quadrature() {
        let (n_max, h, half) = (8, 1e-3, 12.0);
        let steps = (2.0 * half / h) as usize;
        let mut gram = [[0.0_f64; 9]; 9];
        for i in 0..=steps {
            let phi = hermite_functions(n_max, -half + i as f64 * h);
            for a in 0..=n_max {
                for b in 0..=n_max {
                    gram[a][b] += phi[a] * phi[b] * h;
                }
            }
        }
        for a in 0..=n_max {
            for b in 0..=n_max {
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((gram[a][b] - expect).abs() < 1e-10);
            }
        }
    }
}
