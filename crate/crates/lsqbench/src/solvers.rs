//! Ordinary least squares solvers.
//!
//! Three routes to the same minimization problem:
//! - [`solve_pinv`]: the SVD-based Moore-Penrose pseudoinverse, exact and
//!   robust to rank deficiency (returns the minimum-norm solution).
//! - [`solve_normal_equations`]: Cholesky on the normal equations, an
//!   independent direct route used for cross-checking.
//! - [`solve_gd`]: batch gradient descent with a fixed learning rate and a
//!   coefficient-change stopping rule.

use std::fmt;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::matcore::{cholesky_solve, svd, Matrix, Vector};

/// Which solver produced a fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Pinv,
    Normal,
    Gd,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Pinv => write!(f, "pinv"),
            Method::Normal => write!(f, "normal"),
            Method::Gd => write!(f, "gd"),
        }
    }
}

/// Batch gradient descent settings.
///
/// With `normalized` set (the default) the update is
/// `beta <- beta - alpha * (2/n) * x^T (x beta - y)`; without it the `1/n`
/// factor is dropped. Iteration stops when the Euclidean norm of the
/// coefficient change falls below `tol`, or after `max_iter` steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GdConfig {
    pub alpha: f64,
    pub tol: f64,
    pub max_iter: usize,
    pub normalized: bool,
}

impl Default for GdConfig {
    fn default() -> Self {
        Self {
            alpha: 0.01,
            tol: 1e-6,
            max_iter: 10_000,
            normalized: true,
        }
    }
}

impl GdConfig {
    fn validate(&self) -> Result<()> {
        if self.alpha <= 0.0 || self.alpha.is_nan() {
            return Err(Error::Config(format!(
                "learning rate must be positive, got {}",
                self.alpha
            )));
        }
        if self.tol <= 0.0 || self.tol.is_nan() {
            return Err(Error::Config(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iter < 1 {
            return Err(Error::Config("iteration cap must be at least 1".into()));
        }
        Ok(())
    }
}

/// Solver output. `iterations` is 0 for the direct methods; `converged` is
/// false exactly when an iterative method exhausted its cap (or hit a
/// non-finite iterate). `wall_seconds` is monotonic-clock time around the
/// numeric work only.
#[derive(Debug, Clone)]
pub struct FitResult {
    pub beta_hat: Vector,
    pub iterations: usize,
    pub converged: bool,
    pub wall_seconds: f64,
    pub method: Method,
}

/// Moore-Penrose pseudoinverse via SVD. Singular values at or below
/// `rcond * sigma_max` are zeroed instead of inverted; `rcond` defaults to
/// `eps * max(rows, cols)`.
pub fn pinv(a: &Matrix, rcond: Option<f64>) -> Result<Matrix> {
    let rcond = rcond.unwrap_or(f64::EPSILON * a.rows().max(a.cols()) as f64);
    if rcond < 0.0 {
        return Err(Error::Config(format!("rcond must be >= 0, got {rcond}")));
    }
    let dec = svd(a)?;
    let cutoff = rcond * dec.s.get(0);

    // a^+ = v * diag(1/s) * u^T over the retained singular values.
    let ut = dec.u.transpose();
    let mut out = Matrix::zeros(a.cols(), a.rows());
    for i in 0..a.cols() {
        let row = out.row_mut(i);
        for m in 0..dec.s.len() {
            let s = dec.s.get(m);
            if s <= cutoff || s == 0.0 {
                continue;
            }
            let w = dec.vt.get(m, i) / s;
            for (o, &u_val) in row.iter_mut().zip(ut.row(m)) {
                *o += w * u_val;
            }
        }
    }
    Ok(out)
}

/// Least squares via the pseudoinverse: `beta_hat = pinv(x) * y`.
pub fn solve_pinv(x: &Matrix, y: &Vector) -> Result<FitResult> {
    if x.rows() != y.len() {
        return Err(Error::shape(
            "solve_pinv",
            format!("x is {}x{}, y has length {}", x.rows(), x.cols(), y.len()),
        ));
    }
    let start = Instant::now();
    let xp = pinv(x, None)?;
    let beta_hat = xp.mat_vec(y)?;
    let wall_seconds = start.elapsed().as_secs_f64();
    Ok(FitResult {
        beta_hat,
        iterations: 0,
        converged: true,
        wall_seconds,
        method: Method::Pinv,
    })
}

/// Least squares via the normal equations `(x^T x) beta = x^T y`, solved
/// with Cholesky. Fails with a singular-matrix error when `x^T x` is
/// numerically rank deficient.
pub fn solve_normal_equations(x: &Matrix, y: &Vector) -> Result<FitResult> {
    if x.rows() != y.len() {
        return Err(Error::shape(
            "solve_normal_equations",
            format!("x is {}x{}, y has length {}", x.rows(), x.cols(), y.len()),
        ));
    }
    let start = Instant::now();
    let xt = x.transpose();
    let xtx = xt.mat_mul(x)?;
    let xty = x.transpose_vec(y)?;
    let beta_hat = cholesky_solve(&xtx, &xty)?;
    let wall_seconds = start.elapsed().as_secs_f64();
    Ok(FitResult {
        beta_hat,
        iterations: 0,
        converged: true,
        wall_seconds,
        method: Method::Normal,
    })
}

/// One gradient descent update; pure in all inputs. Non-finite values
/// propagate into the result (the caller decides what to do with them).
pub fn gd_step(x: &Matrix, y: &Vector, beta: &Vector, config: &GdConfig) -> Result<Vector> {
    check_gd_shapes("gd_step", x, y, beta)?;
    config.validate()?;
    let mut next = beta.clone();
    let mut residual = vec![0.0; x.rows()];
    gd_step_into(x, y, config, &mut residual, next.data_mut());
    Ok(next)
}

/// In-place update `beta <- beta - coeff * x^T (x beta - y)` with
/// `coeff = 2 alpha / n` (normalized) or `2 alpha` (unnormalized).
fn gd_step_into(
    x: &Matrix,
    y: &Vector,
    config: &GdConfig,
    residual: &mut [f64],
    beta: &mut [f64],
) {
    let coeff = if config.normalized {
        config.alpha * 2.0 / x.rows() as f64
    } else {
        config.alpha * 2.0
    };
    for (i, r) in residual.iter_mut().enumerate() {
        let pred: f64 = x.row(i).iter().zip(beta.iter()).map(|(a, b)| a * b).sum();
        *r = pred - y.get(i);
    }
    for (i, &r) in residual.iter().enumerate() {
        let w = coeff * r;
        if w == 0.0 {
            continue;
        }
        for (b, &xij) in beta.iter_mut().zip(x.row(i)) {
            *b -= w * xij;
        }
    }
}

/// Batch gradient descent from the zero vector. Stops when the coefficient
/// change drops below `config.tol` (converged), when `config.max_iter` steps
/// have run (not converged), or immediately when an iterate turns non-finite
/// (not converged; the last finite iterate is returned).
pub fn solve_gd(x: &Matrix, y: &Vector, config: &GdConfig) -> Result<FitResult> {
    check_gd_shapes("solve_gd", x, y, &Vector::zeros(x.cols()))?;
    config.validate()?;

    let start = Instant::now();
    let d = x.cols();
    let mut beta = vec![0.0; d];
    let mut next = vec![0.0; d];
    let mut residual = vec![0.0; x.rows()];
    let mut iterations = 0;
    let mut converged = false;

    for step in 1..=config.max_iter {
        next.copy_from_slice(&beta);
        gd_step_into(x, y, config, &mut residual, &mut next);
        iterations = step;
        if !next.iter().all(|v| v.is_finite()) {
            break; // beta keeps the last finite iterate
        }
        let delta: f64 = next
            .iter()
            .zip(&beta)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        beta.copy_from_slice(&next);
        if delta < config.tol {
            converged = true;
            break;
        }
    }
    let wall_seconds = start.elapsed().as_secs_f64();

    Ok(FitResult {
        beta_hat: Vector::new(beta),
        iterations,
        converged,
        wall_seconds,
        method: Method::Gd,
    })
}

fn check_gd_shapes(op: &'static str, x: &Matrix, y: &Vector, beta: &Vector) -> Result<()> {
    if x.rows() != y.len() || x.cols() != beta.len() {
        return Err(Error::shape(
            op,
            format!(
                "x is {}x{}, y has length {}, beta has length {}",
                x.rows(),
                x.cols(),
                y.len(),
                beta.len()
            ),
        ));
    }
    Ok(())
}
