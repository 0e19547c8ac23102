//! Seeded random sampling helpers used by the verification suites and tests.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

/// Deterministic RNG for reproducible verification runs.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Vector with i.i.d. uniform entries in [−scale, scale].
pub fn random_vector<R: Rng>(rng: &mut R, n: usize, scale: f64) -> DVector<f64> {
    DVector::from_fn(n, |_, _| rng.gen_range(-scale..scale))
}

/// Uniform direction on the unit sphere of ℝ^n.
pub fn unit_vector<R: Rng>(rng: &mut R, n: usize) -> DVector<f64> {
    loop {
        let v = DVector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0f64));
        let norm = v.norm();
        if norm > 1e-6 {
            return v / norm;
        }
    }
}

/// Complex vector with i.i.d. uniform real and imaginary parts.
pub fn random_complex_vector<R: Rng>(rng: &mut R, n: usize, scale: f64) -> DVector<Complex64> {
    DVector::from_fn(n, |_, _| {
        Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
    })
}

/// Complex scalar with uniform real and imaginary parts in [−scale, scale].
pub fn random_complex<R: Rng>(rng: &mut R, scale: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}
