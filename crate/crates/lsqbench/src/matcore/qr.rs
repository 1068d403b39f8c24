//! Thin QR factorization via Householder reflections.

use crate::error::{Error, Result};
use crate::matcore::matrix::Matrix;

/// Factors a tall matrix `a` (rows >= cols) as `q * r` with `q` of shape
/// rows x cols having orthonormal columns and `r` upper triangular of shape
/// cols x cols.
///
/// Rank deficiency is not an error; it shows up as zero or small diagonal
/// entries of `r` for the caller to inspect.
pub fn householder_qr(a: &Matrix) -> Result<(Matrix, Matrix)> {
    let m = a.rows();
    let n = a.cols();
    if m < n {
        return Err(Error::shape(
            "householder_qr",
            format!("requires rows >= cols, got {m}x{n}"),
        ));
    }

    // Work on a copy; reflector vectors are stored below the diagonal with
    // v[0] kept separately (the diagonal slot holds r[k][k]).
    let mut w = a.clone();
    let mut v0 = vec![0.0; n];
    let mut beta = vec![0.0; n];

    for k in 0..n {
        let norm_sq: f64 = (k..m).map(|i| w.get(i, k) * w.get(i, k)).sum();
        let norm = norm_sq.sqrt();
        if norm == 0.0 {
            beta[k] = 0.0;
            continue;
        }
        let wkk = w.get(k, k);
        let alpha = if wkk >= 0.0 { -norm } else { norm };
        let v_head = wkk - alpha;
        // ||v||^2 = ||x||^2 - 2*alpha*x0 + alpha^2 = 2*(norm^2 - alpha*x0)
        let v_norm_sq = 2.0 * (norm_sq - alpha * wkk);
        v0[k] = v_head;
        beta[k] = 2.0 / v_norm_sq;

        // Apply the reflector to the trailing columns.
        for j in (k + 1)..n {
            let mut s = v_head * w.get(k, j);
            for i in (k + 1)..m {
                s += w.get(i, k) * w.get(i, j);
            }
            s *= beta[k];
            w.set(k, j, w.get(k, j) - s * v_head);
            for i in (k + 1)..m {
                w.set(i, j, w.get(i, j) - s * w.get(i, k));
            }
        }
        w.set(k, k, alpha);
    }

    let mut r = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            r.set(i, j, w.get(i, j));
        }
    }

    // Accumulate the thin q by applying reflectors in reverse order to the
    // first n columns of the identity.
    let mut q = Matrix::zeros(m, n);
    for j in 0..n {
        q.set(j, j, 1.0);
    }
    for k in (0..n).rev() {
        if beta[k] == 0.0 {
            continue;
        }
        for j in 0..n {
            let mut s = v0[k] * q.get(k, j);
            for i in (k + 1)..m {
                s += w.get(i, k) * q.get(i, j);
            }
            s *= beta[k];
            q.set(k, j, q.get(k, j) - s * v0[k]);
            for i in (k + 1)..m {
                q.set(i, j, q.get(i, j) - s * w.get(i, k));
            }
        }
    }

    Ok((q, r))
}
