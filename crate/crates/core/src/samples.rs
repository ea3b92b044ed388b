//! Reproducible test functions: seeded random band-limited families and
//! closed-form coefficient laws (Poisson, heat, prescribed decay).

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fourier::{inverse_on, FourierCoefficients, GridFunction};
use crate::group::{DualIndex, GroupKind, QuadratureGrid};

/// Coefficients with independent entries uniform in the unit square
/// `[-1, 1] + i[-1, 1]`.
pub fn random_coefficients(kind: GroupKind, bandlimit: usize, value_dim: usize, seed: u64) -> FourierCoefficients {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = FourierCoefficients::zeros(kind, bandlimit, value_dim);
    for i in 0..t.dual().len() {
        for z in t.block_mut(i) {
            *z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    t
}

/// A random function of band limit `grid.bandlimit`, sampled on `grid`.
pub fn random_function(grid: &Arc<QuadratureGrid>, value_dim: usize, seed: u64) -> GridFunction {
    let t = random_coefficients(grid.kind, grid.bandlimit, value_dim, seed);
    inverse_on(&t, grid).expect("coefficients match the grid")
}

/// A random `C^m` vector with entries in the unit square.
pub fn random_vector(m: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

/// Poisson kernel coefficients `e^{-t √λ_ξ} Id`.
pub fn poisson_coefficients(kind: GroupKind, bandlimit: usize, t: f64) -> FourierCoefficients {
    FourierCoefficients::scalar_multiple_of_identity(kind, bandlimit, |xi| libm::exp(-t * xi.sqrt_casimir()))
}

/// Heat kernel coefficients `e^{-t λ_ξ} Id`.
pub fn heat_coefficients(kind: GroupKind, bandlimit: usize, t: f64) -> FourierCoefficients {
    FourierCoefficients::scalar_multiple_of_identity(kind, bandlimit, |xi| libm::exp(-t * xi.casimir))
}

/// `(n(ξ) / √d_ξ) Id`, whose Hilbert-Schmidt norm is exactly `n(ξ)`.
pub fn coefficients_with_norms(
    kind: GroupKind,
    bandlimit: usize,
    norm: impl Fn(&DualIndex) -> f64,
) -> FourierCoefficients {
    FourierCoefficients::scalar_multiple_of_identity(kind, bandlimit, |xi| norm(xi) / libm::sqrt(xi.dim as f64))
}
