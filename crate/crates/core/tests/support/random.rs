//! Seeded random instances for property suites.

use fairalloc::rational::integer;
use fairalloc::Instance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn instance(rng: &mut impl Rng, n: usize, m: usize, lo: i64, hi: i64, random_weights: bool) -> Instance {
    let weights = (0..n).map(|_| integer(if random_weights { rng.gen_range(1..=10) } else { 1 })).collect();
    let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..m).map(|_| rng.gen_range(lo..=hi)).collect()).collect();
    Instance::from_integers(weights, &rows).unwrap()
}

/// `count` instances with n in 2..=4, m in 2..=6, utilities in [-5, 5],
/// alternating equal and random weights.
pub fn suite(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let n = rng.gen_range(2..=4);
            let m = rng.gen_range(2..=6);
            instance(&mut rng, n, m, -5, 5, k % 2 == 1)
        })
        .collect()
}
