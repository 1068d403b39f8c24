//! Evaluation quantities: mean squared error, coefficient-space error, and
//! the measured condition factor of a design matrix.

use crate::error::{Error, Result};
use crate::matcore::{svd, Matrix, Vector};

/// Training-set mean squared error `(1/n) * ||x * beta - y||^2`.
pub fn mse(x: &Matrix, beta: &Vector, y: &Vector) -> Result<f64> {
    if x.cols() != beta.len() || x.rows() != y.len() {
        return Err(Error::shape(
            "mse",
            format!(
                "x is {}x{}, beta has length {}, y has length {}",
                x.rows(),
                x.cols(),
                beta.len(),
                y.len()
            ),
        ));
    }
    let n = x.rows() as f64;
    let mut acc = 0.0;
    for i in 0..x.rows() {
        let pred: f64 = x.row(i).iter().zip(beta.data()).map(|(a, b)| a * b).sum();
        let r = pred - y.get(i);
        acc += r * r;
    }
    Ok(acc / n)
}

/// Squared Euclidean distance between an estimate and the ground truth.
pub fn coef_error(beta_hat: &Vector, beta_star: &Vector) -> Result<f64> {
    if beta_hat.len() != beta_star.len() {
        return Err(Error::shape(
            "coef_error",
            format!("lengths {} and {}", beta_hat.len(), beta_star.len()),
        ));
    }
    Ok(beta_hat
        .data()
        .iter()
        .zip(beta_star.data())
        .map(|(a, b)| (a - b) * (a - b))
        .sum())
}

/// Smallest over largest singular value, in (0, 1]. Returns 0 when the
/// smallest singular value truncates to zero under the default relative
/// threshold `eps * max(rows, cols)`.
pub fn measured_cond_factor(x: &Matrix) -> Result<f64> {
    if x.data().iter().all(|&v| v == 0.0) {
        return Err(Error::Degenerate(
            "condition factor of an all-zero matrix".into(),
        ));
    }
    let r = svd(x)?;
    let s_max = r.s.get(0);
    let s_min = r.s.get(r.s.len() - 1);
    let cutoff = f64::EPSILON * (x.rows().max(x.cols()) as f64) * s_max;
    if s_min <= cutoff {
        Ok(0.0)
    } else {
        Ok(s_min / s_max)
    }
}
