//! Seedable random number generation.
//!
//! A thin wrapper over a ChaCha stream cipher generator so that every draw
//! sequence is a pure function of the 64-bit seed, on any platform. The
//! generator is the only stateful value in this crate and must not be shared
//! across concurrent callers.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::matcore::matrix::{Matrix, Vector};

/// Deterministic seeded generator.
#[derive(Debug, Clone)]
pub struct Rng {
    inner: ChaCha12Rng,
}

impl Rng {
    pub fn from_seed(seed: u64) -> Self {
        Self {
            inner: ChaCha12Rng::seed_from_u64(seed),
        }
    }

    /// One standard-normal draw; advances the generator state.
    pub fn standard_normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.inner)
    }

    pub fn gaussian_vector(&mut self, len: usize) -> Vector {
        Vector::new((0..len).map(|_| self.standard_normal()).collect())
    }
}

/// Matrix with independent standard-normal entries, drawn row by row.
pub fn gaussian_matrix(rows: usize, cols: usize, rng: &mut Rng) -> Matrix {
    assert!(rows >= 1 && cols >= 1, "gaussian_matrix: empty shape");
    let data = (0..rows * cols).map(|_| rng.standard_normal()).collect();
    Matrix::new(rows, cols, data).expect("shape is consistent by construction")
}
