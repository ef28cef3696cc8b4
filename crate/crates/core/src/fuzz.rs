//! Random valid tensors.
//!
//! Under the two-step support conditions every antisymmetric tensor is a
//! Lie algebra (each Jacobi product contains some `a_{k,·,·}` with `k > d1`,
//! which vanishes), so sampling the upper entries is enough.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};
use crate::tensor::{StructureTensor, Triple};

/// Values drawn for fuzz entries: ±1, ±1/2, ±2, ±3.
pub const FUZZ_VALUES: [(i64, i64); 8] = [(1, 1), (-1, 1), (1, 2), (-1, 2), (2, 1), (-2, 1), (3, 1), (-3, 1)];

/// Deterministic generator used by the CLI and the test suites.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A tensor on `dim` coordinates with first layer `dim_v1`, keeping each
/// admissible upper triple `i < j <= d1 < k` with probability `density`.
pub fn random_tensor<R: RngExt + ?Sized>(
    dim: usize,
    dim_v1: usize,
    density: f64,
    rng: &mut R,
) -> Result<StructureTensor> {
    if dim_v1 == 0 || dim_v1 >= dim {
        return Err(Error::Precondition(format!("need 1 <= d1 < d, got d = {dim}, d1 = {dim_v1}")));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::Precondition(format!("density must lie in (0, 1], got {density}")));
    }
    let mut entries: Vec<(Triple, Rational)> = Vec::new();
    for k in dim_v1 + 1..=dim {
        for i in 1..=dim_v1 {
            for j in i + 1..=dim_v1 {
                if rng.random_bool(density) {
                    let (p, q) = FUZZ_VALUES[rng.random_range(0..FUZZ_VALUES.len())];
                    entries.push((Triple::new(i, j, k), rat(p, q)));
                }
            }
        }
    }
    StructureTensor::from_upper_entries(dim, dim_v1, entries)
}

/// [`random_tensor`] with a fresh generator seeded by `seed`.
pub fn seeded_tensor(dim: usize, dim_v1: usize, density: f64, seed: u64) -> Result<StructureTensor> {
    random_tensor(dim, dim_v1, density, &mut rng_from_seed(seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_tensors_validate() {
        for seed in 0..50 {
            let t = seeded_tensor(6, 4, 0.7, seed).unwrap();
            assert!(t.validate().is_valid(), "seed {seed}: {}", t.validate());
        }
    }

    #[test]
    fn full_density_fills_every_slot() {
        let t = seeded_tensor(3, 2, 1.0, 7).unwrap();
        assert_eq!(t.support_len(), 2);
        let t = seeded_tensor(6, 4, 1.0, 7).unwrap();
        // C(4,2) pairs × 2 targets, both orientations
        assert_eq!(t.support_len(), 24);
    }

    #[test]
    fn tiny_density_is_abelian() {
        let t = seeded_tensor(5, 3, 1e-12, 1).unwrap();
        assert!(t.is_abelian());
    }

    #[test]
    fn deterministic() {
        assert_eq!(seeded_tensor(6, 3, 0.5, 42).unwrap(), seeded_tensor(6, 3, 0.5, 42).unwrap());
    }

    #[test]
    fn preconditions() {
        assert!(seeded_tensor(3, 3, 0.5, 0).is_err());
        assert!(seeded_tensor(3, 0, 0.5, 0).is_err());
        assert!(seeded_tensor(3, 2, 0.0, 0).is_err());
        assert!(seeded_tensor(3, 2, 1.5, 0).is_err());
    }
}
