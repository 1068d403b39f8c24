//! Dense least-squares toolkit and benchmark harness.
//!
//! Implements and compares two solvers for ordinary least squares: the
//! SVD-based Moore-Penrose pseudoinverse (exact, minimum-norm) and batch
//! gradient descent (iterative, sensitive to conditioning), plus a Cholesky
//! normal-equations route used as an independent cross-check. Synthetic
//! problems with an exactly controlled condition factor drive a benchmark
//! sweep whose results feed summary tables and SVG plots; arbitrary numeric
//! CSV datasets are supported through the CLI.

pub mod bench;
pub mod cli;
pub mod datagen;
mod error;
pub mod matcore;
pub mod metrics;
pub mod solvers;

pub use error::{Error, Result};
pub use matcore::{Matrix, Vector};
