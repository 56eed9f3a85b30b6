//! Seeded sampling helpers. ChaCha8 keeps the streams identical across
//! platforms and runs.

use nalgebra::DVector;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard normal vector of length `n`.
pub fn normal_vector(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    DVector::from_fn(n, |_, _| rng.sample(StandardNormal))
}

/// Unit vector drawn with normal coordinates then normalized.
pub fn unit_vector(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    loop {
        let v = normal_vector(rng, n);
        let norm = v.norm();
        if norm > 1e-12 {
            return v / norm;
        }
    }
}
