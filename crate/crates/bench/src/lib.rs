//! Benchmark fixtures.

use slicereg::verify::Sampler;
use slicereg::{Quaternion, SlicePolynomial};

/// Random polynomial of the given degree, deterministic in `seed`.
pub fn poly(degree: usize, seed: u64) -> SlicePolynomial {
    Sampler::new(seed).polynomial(degree, 0.0)
}

/// `n` random points off the real axis.
pub fn points(n: usize, seed: u64) -> Vec<Quaternion> {
    let mut rng = Sampler::new(seed);
    (0..n).map(|_| rng.slice_point().to_quaternion()).collect()
}
