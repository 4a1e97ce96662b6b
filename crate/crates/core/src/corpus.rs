//! Seeded random inputs for property tests and benchmarks.

use rand::Rng;

use crate::git::ChargeMatrix;

/// A `k x n` charge matrix with entries drawn uniformly from `[-bound, bound]`.
pub fn random_charge_matrix<R: Rng>(rng: &mut R, k: usize, n: usize, bound: i64) -> ChargeMatrix {
    let rows = (0..k)
        .map(|_| (0..n).map(|_| rng.random_range(-bound..=bound)).collect())
        .collect();
    ChargeMatrix::new(rows).expect("k and n are positive")
}

/// Seeded matrices with `k` in `ks` and `n` in `ns`, entries in `[-bound, bound]`.
pub fn charge_matrix_corpus(
    seed: u64,
    count: usize,
    ks: std::ops::RangeInclusive<usize>,
    ns: std::ops::RangeInclusive<usize>,
    bound: i64,
) -> Vec<ChargeMatrix> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let k = rng.random_range(ks.clone());
            let n = rng.random_range(ns.clone());
            random_charge_matrix(&mut rng, k, n, bound)
        })
        .collect()
}
