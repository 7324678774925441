#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rlpc::{make_pmf, LengthSet, Pmf};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Random pmf with weights drawn uniformly from (0.01, 1].
pub fn random_pmf(rng: &mut StdRng, n: usize) -> Pmf {
    let weights: Vec<f64> = (0..n).map(|_| 0.01 + 0.99 * rng.random::<f64>()).collect();
    make_pmf(&weights, true).unwrap()
}

/// Every nonempty subset of `1..=max` (as allowed-length sets) that can hold
/// `n` symbols.
pub fn feasible_subsets(max: u32, n: usize) -> Vec<LengthSet> {
    (1u32..(1 << max))
        .map(|mask| LengthSet::new((1..=max).filter(|l| mask & (1 << (l - 1)) != 0)).unwrap())
        .filter(|ls| rlpc::is_feasible(ls, n))
        .collect()
}
