//! Dense Gaussian elimination for the small boundary-condition systems.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Solves `a x = rhs` in place with partial pivoting. `a` is row-major `n x n`.
pub fn solve_dense(mut a: Vec<f64>, mut rhs: Vec<f64>) -> Result<Vec<f64>> {
    let n = rhs.len();
    assert_eq!(a.len(), n * n, "matrix shape does not match right-hand side");
    let scale = a.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return Err(Error::SingularSystem);
    }
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))
            .unwrap();
        if a[pivot * n + col].abs() <= 1e-14 * scale {
            return Err(Error::SingularSystem);
        }
        if pivot != col {
            for k in 0..n {
                a.swap(col * n + k, pivot * n + k);
            }
            rhs.swap(col, pivot);
        }
        let inv = 1.0 / a[col * n + col];
        for row in col + 1..n {
            let l = a[row * n + col] * inv;
            if l == 0.0 {
                continue;
            }
            for k in col..n {
                a[row * n + k] -= l * a[col * n + k];
            }
            rhs[row] -= l * rhs[col];
        }
    }
    let mut x = alloc::vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| a[row * n + k] * x[k]).sum();
        x[row] = (rhs[row] - tail) / a[row * n + row];
    }
    Ok(x)
}
