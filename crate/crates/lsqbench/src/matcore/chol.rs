//! Cholesky factorization and solve for symmetric positive definite systems.

use crate::error::{Error, Result};
use crate::matcore::matrix::{Matrix, Vector};

/// Solves `a * x = b` for symmetric positive definite `a` via the Cholesky
/// factorization `a = L * L^T`. Only the lower triangle of `a` is read.
///
/// A diagonal pivot at or below `machine-eps * trace(a)` signals that `a` is
/// numerically singular or indefinite and yields a singular-matrix error.
pub fn cholesky_solve(a: &Matrix, b: &Vector) -> Result<Vector> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::shape(
            "cholesky_solve",
            format!("matrix must be square, got {}x{}", a.rows(), a.cols()),
        ));
    }
    if b.len() != n {
        return Err(Error::shape(
            "cholesky_solve",
            format!("matrix is {n}x{n}, vector has length {}", b.len()),
        ));
    }

    let trace: f64 = (0..n).map(|i| a.get(i, i)).sum();
    let pivot_tol = f64::EPSILON * trace;

    let mut l = vec![0.0; n * n];
    for j in 0..n {
        let mut diag = a.get(j, j);
        for k in 0..j {
            diag -= l[j * n + k] * l[j * n + k];
        }
        if diag <= pivot_tol {
            return Err(Error::Singular(format!(
                "non-positive-definite pivot {diag:.3e} at row {j}"
            )));
        }
        let ljj = diag.sqrt();
        l[j * n + j] = ljj;
        for i in (j + 1)..n {
            let mut v = a.get(i, j);
            for k in 0..j {
                v -= l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = v / ljj;
        }
    }

    // Forward solve L y = b, then back solve L^T x = y.
    let mut x = b.data().to_vec();
    for i in 0..n {
        for k in 0..i {
            x[i] -= l[i * n + k] * x[k];
        }
        x[i] /= l[i * n + i];
    }
    for i in (0..n).rev() {
        for k in (i + 1)..n {
            x[i] -= l[k * n + i] * x[k];
        }
        x[i] /= l[i * n + i];
    }
    Ok(Vector::new(x))
}
