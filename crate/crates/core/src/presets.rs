//! Built-in groups.

use num::{BigRational, One};

use crate::tensor::{StructureTensor, Triple};

/// The Heisenberg group ℍ_n: `d = 2n + 1`, `d1 = 2n`,
/// `a_{i,n+i,2n+1} = 1` and `a_{n+i,i,2n+1} = -1` for `i = 1..=n`.
///
/// Panics if `n == 0`.
pub fn heisenberg(n: usize) -> StructureTensor {
    assert!(n >= 1, "Heisenberg group needs n >= 1");
    let entries = (1..=n).map(|i| (Triple::new(i, n + i, 2 * n + 1), BigRational::one()));
    StructureTensor::from_upper_entries(2 * n + 1, 2 * n, entries).expect("Heisenberg entries are well formed")
}

/// ℝ^d with an empty bracket and first layer of dimension `d1`.
///
/// Panics unless `1 <= d1 <= d`.
pub fn abelian(dim: usize, dim_v1: usize) -> StructureTensor {
    StructureTensor::abelian(dim, dim_v1).expect("1 <= d1 <= d")
}
