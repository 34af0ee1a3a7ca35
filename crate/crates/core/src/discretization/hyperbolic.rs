use std::collections::HashMap;

use serde::Serialize;

use crate::count::BigCount;
use crate::lattice::Point;

fn cross_size(d: usize, n: u64, memo: &mut HashMap<(usize, u64), u64>) -> u64 {
    if n == 0 {
        return 0;
    }
    if d == 1 {
        return n;
    }
    if let Some(&v) = memo.get(&(d, n)) {
        return v;
    }
    let v = (1..=n).map(|k| cross_size(d - 1, n / k, memo)).sum();
    memo.insert((d, n), v);
    v
}

/// `|H_d^n|`, the number of `k` in `N^d` with `prod k_i <= n`.
pub fn hyperbolic_cross_size(d: usize, n: u64) -> BigCount {
    assert!(d >= 1);
    BigCount::from(cross_size(d, n, &mut HashMap::new()))
}

/// `n (1 + ln n)^(d-1)`.
pub fn hyperbolic_cross_bound(d: usize, n: u64) -> f64 {
    assert!(d >= 1 && n >= 1);
    n as f64 * (1.0 + (n as f64).ln()).powi(d as i32 - 1)
}

/// Membership of a positive point in `H_d^n`.
pub fn in_hyperbolic_cross(k: &Point, n: u64) -> bool {
    let mut prod: u64 = 1;
    for &c in k.coords() {
        if c == 0 {
            return false;
        }
        prod = match prod.checked_mul(c as u64) {
            Some(p) if p <= n => p,
            _ => return false,
        };
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RegimeLabel {
    /// `n < d^d`: the `n^2 ln d` estimate is the smaller one.
    #[serde(rename = "n < d^d")]
    SmallN,
    /// `n >= d^d`: the hyperbolic-cross estimate wins.
    #[serde(rename = "n >= d^d")]
    LargeN,
}

impl std::fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RegimeLabel::SmallN => "n < d^d",
            RegimeLabel::LargeN => "n >= d^d",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Regime {
    pub label: RegimeLabel,
    /// `n^2 ln d`.
    pub lower_set_bound: f64,
    /// `n (1 + ln n)^(d-1)`.
    pub hyperbolic_bound: f64,
}

/// Which point-count estimate applies, decided by the exact comparison `n < d^d`.
pub fn regime_table(d: usize, n: u64) -> Regime {
    assert!(d >= 1 && n >= 1);
    // d^d overflows u64 from d = 16 on, where n < d^d always holds
    let small = match (d as u64).checked_pow(d as u32) {
        Some(dd) => n < dd,
        None => true,
    };
    Regime {
        label: if small { RegimeLabel::SmallN } else { RegimeLabel::LargeN },
        lower_set_bound: (n as f64).powi(2) * (d as f64).ln(),
        hyperbolic_bound: hyperbolic_cross_bound(d, n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(d: usize, n: u64) -> u64 {
        fn rec(d: usize, budget: u64) -> u64 {
            if d == 0 {
                return 1;
            }
            (1..=budget).map(|k| rec(d - 1, budget / k)).sum()
        }
        rec(d, n)
    }

    #[test]
    fn cross_examples() {
        assert_eq!(hyperbolic_cross_size(2, 4), 8);
        assert_eq!(hyperbolic_cross_size(1, 7), 7);
        assert_eq!(hyperbolic_cross_size(3, 0), 0);
    }

    #[test]
    fn cross_matches_direct_count() {
        for d in 1..=4 {
            for n in 1..=30u64 {
                // direct scan of the box [1, n]^d
                let mut count = 0;
                let mut k = vec![1u32; d];
                loop {
                    if in_hyperbolic_cross(&Point::new(k.clone()), n) {
                        count += 1;
                    }
                    let mut i = 0;
                    while i < d && k[i] as u64 == n {
                        k[i] = 1;
                        i += 1;
                    }
                    if i == d {
                        break;
                    }
                    k[i] += 1;
                }
                assert_eq!(count, brute(d, n));
                assert_eq!(hyperbolic_cross_size(d, n), count, "d={d} n={n}");
            }
        }
    }

    #[test]
    fn regime_examples() {
        assert_eq!(regime_table(2, 3).label, RegimeLabel::SmallN);
        assert_eq!(regime_table(2, 4).label, RegimeLabel::LargeN);
        assert_eq!(regime_table(2, 5).label, RegimeLabel::LargeN);
        assert_eq!(regime_table(3, 1000).label, RegimeLabel::LargeN);
        assert_eq!(regime_table(3, 26).label, RegimeLabel::SmallN);
        assert_eq!(regime_table(20, u64::MAX).label, RegimeLabel::SmallN);
        let r = regime_table(2, 3);
        assert!((r.lower_set_bound - 9.0 * 2f64.ln()).abs() < 1e-14);
        assert!((r.hyperbolic_bound - 3.0 * (1.0 + 3f64.ln())).abs() < 1e-14);
    }
}
