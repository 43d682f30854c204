//! Seeded matrix generation.
//!
//! All randomness comes from ChaCha8 (`rand_chacha`) seeded through
//! `SeedableRng::seed_from_u64`, so a seed fixes every generated value on
//! every platform. Independent trials share a seed and differ by ChaCha
//! stream number.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::matrix::{Mat, Role};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct MatrixRng {
    rng: ChaCha8Rng,
}

impl MatrixRng {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Generator for trial number `trial` of a campaign seeded with `seed`.
    pub fn for_trial(seed: u64, trial: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        Self { rng }
    }

    /// Integer entries drawn uniformly from `[-range, range]`, row-major.
    pub fn int_matrix<T: Scalar>(&mut self, role: Role, n: usize, range: u32) -> Result<Mat<T>> {
        let range = i64::from(range);
        Mat::from_fn(role, n, |_, _| {
            if range == 0 {
                T::zero()
            } else {
                T::from_i64(self.rng.gen_range(-range..=range))
            }
        })
    }

    /// Float entries drawn uniformly from `[-1, 1]`, row-major.
    pub fn unit_matrix(&mut self, role: Role, n: usize) -> Result<Mat<f64>> {
        Mat::from_fn(role, n, |_, _| self.rng.gen_range(-1.0..=1.0))
    }

    pub fn int_in(&mut self, range: u32) -> i64 {
        let range = i64::from(range);
        self.rng.gen_range(-range..=range)
    }
}

/// `n × n` matrix of integers uniform in `[-range, range]`; equal seeds give
/// identical matrices.
pub fn random_matrix<T: Scalar>(role: Role, n: usize, seed: u64, range: u32) -> Result<Mat<T>> {
    MatrixRng::new(seed).int_matrix(role, n, range)
}
