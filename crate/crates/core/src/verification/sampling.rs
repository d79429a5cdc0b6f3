//! Seeded random parameters.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::GradedMap;
use crate::catalog::HeadRows;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Random rationals `p/q` with `p ∈ [−9, 9]`, `q ∈ {1, 2, 3}`. With
/// probability `zero_prob` an entry is forced to zero before drawing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamSampler {
    pub zero_prob: f64,
}

impl ParamSampler {
    pub const DENSE: ParamSampler = ParamSampler { zero_prob: 0.0 };

    pub fn sparse(zero_prob: f64) -> Self {
        ParamSampler { zero_prob }
    }

    pub fn scalar<F: Scalar>(&self, rng: &mut ChaCha8Rng) -> F {
        if self.zero_prob > 0.0 && rng.gen_bool(self.zero_prob) {
            return F::zero();
        }
        F::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=3))
    }

    /// Nonzero rational from the same grid.
    pub fn nonzero<F: Scalar>(&self, rng: &mut ChaCha8Rng) -> F {
        loop {
            let p: i64 = rng.gen_range(-9..=9);
            if p != 0 {
                return F::from_ratio(p, rng.gen_range(1..=3));
            }
        }
    }

    pub fn rows<F: Scalar>(&self, rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<F>> {
        (0..rows)
            .map(|_| (0..cols).map(|_| self.scalar(rng)).collect())
            .collect()
    }

    pub fn head_rows<F: Scalar>(&self, rng: &mut ChaCha8Rng, n: usize, m: usize) -> HeadRows<F> {
        HeadRows {
            alpha: self.rows(rng, n, m.saturating_sub(1)),
            beta: self.rows(rng, m, n.saturating_sub(1)),
        }
    }
}

/// Random invertible matrix `L·U` with unit-diagonal `L` and a nonzero
/// diagonal on `U`, so invertibility holds by construction.
pub fn random_invertible<F: Scalar>(rng: &mut ChaCha8Rng, size: usize) -> Matrix<F> {
    let grid = ParamSampler::DENSE;
    let mut lower = Matrix::identity(size);
    let mut upper = Matrix::zeros(size, size);
    for i in 0..size {
        for j in 0..size {
            if j < i {
                lower[(i, j)] = grid.scalar(rng);
            } else if j == i {
                upper[(i, j)] = grid.nonzero(rng);
            } else {
                upper[(i, j)] = grid.scalar(rng);
            }
        }
    }
    lower.mul(&upper).expect("square factors")
}

pub fn random_graded_map<F: Scalar>(rng: &mut ChaCha8Rng, n: usize, m: usize) -> GradedMap<F> {
    GradedMap::new(random_invertible(rng, n), random_invertible(rng, m)).expect("square blocks")
}

/// Independent stream for one trial of a seeded run.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}
