//! Seeded random matrices for property checks and multistart searches.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::scalar::Scalar;
use crate::symmat::SymmetricMatrix;

/// Deterministic generator for a restart or sample index: `seed + index`.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(index))
}

/// Symmetric matrix with independent standard normal entries on and above the diagonal.
pub fn symmetric<T: Scalar, R: Rng>(n: usize, rng: &mut R) -> SymmetricMatrix<T> {
    SymmetricMatrix::from_upper_fn(n, |_, _| T::lit(rng.sample::<f64, _>(StandardNormal)))
        .expect("order must be positive")
}

/// `G Gᵀ` for an `n × rank` standard normal factor `G`.
pub fn psd<T: Scalar, R: Rng>(n: usize, rank: usize, rng: &mut R) -> SymmetricMatrix<T> {
    let g: Vec<f64> = (0..n * rank).map(|_| rng.sample(StandardNormal)).collect();
    SymmetricMatrix::from_upper_fn(n, |i, j| {
        let s: f64 = (0..rank).map(|k| g[i * rank + k] * g[j * rank + k]).sum();
        T::lit(s)
    })
    .expect("order must be positive")
}

/// Entrywise uniform `[0, 1)` symmetric matrix.
pub fn nonnegative<T: Scalar, R: Rng>(n: usize, rng: &mut R) -> SymmetricMatrix<T> {
    SymmetricMatrix::from_upper_fn(n, |_, _| T::lit(rng.random::<f64>()))
        .expect("order must be positive")
}

/// Nonzero, zero-diagonal nonnegative matrix. Each off-diagonal entry is zero
/// with probability one half and uniform in `(0, 1)` otherwise.
pub fn zero_diagonal_nonnegative<T: Scalar, R: Rng>(n: usize, rng: &mut R) -> SymmetricMatrix<T> {
    assert!(n >= 2, "zero-diagonal nonnegative matrices need n >= 2");
    loop {
        let m = SymmetricMatrix::from_upper_fn(n, |i, j| {
            if i == j || rng.random_bool(0.5) {
                T::zero()
            } else {
                T::lit(rng.random::<f64>())
            }
        })
        .expect("order must be positive");
        if !m.is_zero() {
            return m;
        }
    }
}
