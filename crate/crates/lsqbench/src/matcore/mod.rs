//! Dense matrix and vector arithmetic, seeded sampling, and the
//! factorizations (Householder QR, one-sided Jacobi SVD, Cholesky) the rest
//! of the crate builds on.

mod chol;
mod matrix;
mod qr;
mod rng;
mod svd;

pub use chol::cholesky_solve;
pub use matrix::{Matrix, Vector};
pub use qr::householder_qr;
pub use rng::{gaussian_matrix, Rng};
pub use svd::{svd, SvdResult, JACOBI_SWEEP_CAP, JACOBI_TOL};
