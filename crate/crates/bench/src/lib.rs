//! Seeded random inputs shared by the benchmarks.

use homz_core::{BigInt, Equation, IntMatrix, System};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-bound..=bound)).collect();
    IntMatrix::from_i64(rows, cols, &data)
}

/// A system with `m` equations over `n` variables, each equation touching up
/// to `density` variables.
pub fn random_system(rng: &mut impl Rng, m: usize, n: usize, density: usize, bound: i64) -> System {
    let variables = (0..n).map(|i| format!("x{i}")).collect();
    let equations = (0..m)
        .map(|_| {
            Equation::new((0..density).map(|_| {
                let c = rng.gen_range(-bound..=bound);
                (rng.gen_range(0..n), BigInt::from(c))
            }))
        })
        .filter(|e| !e.is_zero())
        .collect();
    System::new(variables, equations).expect("indices in range")
}
