//! Counting routes for `d = 2` and `d = 3` that share no code with the growth
//! tree, so a disagreement points straight at one side.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::count::BigCount;

/// `p_2(n)` for `n = 0..=n_max`: linear partitions, counted by adding one
/// admissible part size at a time (partitions with largest part `<= k`).
pub fn partition_oracle_2d(n_max: usize) -> Vec<BigCount> {
    let mut table = vec![BigUint::zero(); n_max + 1];
    table[0] = BigUint::one();
    for part in 1..=n_max {
        for total in part..=n_max {
            let (lo, hi) = table.split_at_mut(total);
            hi[0] += &lo[total - part];
        }
    }
    table.into_iter().map(BigCount).collect()
}

/// `p_3(n)` for `n = 0..=n_max`: plane partitions, read off as coefficients of
/// MacMahon's product `prod_{k>=1} (1 - q^k)^{-k}` truncated at degree `n_max`.
pub fn plane_partition_oracle_3d(n_max: usize) -> Vec<BigCount> {
    let mut series = vec![BigUint::zero(); n_max + 1];
    series[0] = BigUint::one();
    for k in 1..=n_max {
        // multiply by 1/(1 - q^k), k times
        for _ in 0..k {
            for total in k..=n_max {
                let (lo, hi) = series.split_at_mut(total);
                hi[0] += &lo[total - k];
            }
        }
    }
    series.into_iter().map(BigCount).collect()
}
