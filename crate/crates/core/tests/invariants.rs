use std::collections::BTreeSet;

use lowerset::bounds::{
    gamma_ln, growth_scale, lambda_d, rho_d, theorem2_constants, verify_sandwich, FlagStatus, LOG_TOLERANCE,
};
use lowerset::discretization::{
    hyperbolic_cross_size, in_hyperbolic_cross, search_minimal_m, tensor_grid, universal_constants, SearchConfig,
};
use lowerset::staircase::{choose_m, staircase_family, staircase_numbers};
use lowerset::{
    count_dfs, count_lower_sets, enumerate_lower_sets, from_partition, is_lower_set, partition_oracle_2d,
    plane_partition_oracle_3d, slice_decompose, to_partition, BigCount, CountMethod, LowerSet, Point,
    DEFAULT_NODE_BUDGET,
};
use num_bigint::BigUint;
use std::f64::consts::LN_2;

fn sorted_json(sets: impl Iterator<Item = LowerSet>) -> Vec<String> {
    let mut v: Vec<String> = sets.map(|q| q.to_json()).collect();
    v.sort();
    v
}

/// Every lower set of size `n`, grown level by level from all sets of size
/// `n - 1` and deduplicated. Addability is decided by the public predicate,
/// not by the enumerator's frontier logic.
fn closure_oracle(dim: usize, n: usize) -> BTreeSet<Vec<Point>> {
    let mut level: BTreeSet<Vec<Point>> = BTreeSet::from([Vec::new()]);
    for size in 0..n {
        let mut next = BTreeSet::new();
        for set in &level {
            // all candidates live in the box [0, size]^dim
            let mut c = vec![0u32; dim];
            loop {
                let p = Point::new(c.clone());
                if !set.contains(&p) {
                    let mut grown = set.clone();
                    grown.push(p);
                    grown.sort();
                    if is_lower_set(dim, &grown).unwrap() {
                        next.insert(grown);
                    }
                }
                let mut i = 0;
                while i < dim && c[i] as usize == size {
                    c[i] = 0;
                    i += 1;
                }
                if i == dim {
                    break;
                }
                c[i] += 1;
            }
        }
        level = next;
    }
    level
}

#[test]
fn enumeration_matches_closure_oracle() {
    for d in 1..=4 {
        for n in 0..=6 {
            let oracle: Vec<String> =
                closure_oracle(d, n).into_iter().map(|p| serde_json::to_string(&p).unwrap()).collect();
            let got = sorted_json(enumerate_lower_sets(d, n).unwrap());
            assert_eq!(got, oracle, "d={d} n={n}");
        }
    }
}

/// Literal filter of every n-subset of the box {0..n-1}^d, feasible only for tiny cases.
#[test]
fn enumeration_matches_literal_subset_filter() {
    fn subsets(pool: &[Point], k: usize, start: usize, cur: &mut Vec<Point>, out: &mut Vec<Vec<Point>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i].clone());
            subsets(pool, k, i + 1, cur, out);
            cur.pop();
        }
    }
    for (d, n) in [(2, 3), (2, 4), (3, 3), (1, 4), (2, 5)] {
        let side = n as u32;
        let pool: Vec<Point> = match d {
            1 => (0..side).map(|a| Point::new(vec![a])).collect(),
            2 => (0..side).flat_map(|a| (0..side).map(move |b| Point::new(vec![a, b]))).collect(),
            _ => (0..side)
                .flat_map(|a| (0..side).flat_map(move |b| (0..side).map(move |c| Point::new(vec![a, b, c]))))
                .collect(),
        };
        let mut all = Vec::new();
        subsets(&pool, n, 0, &mut Vec::new(), &mut all);
        let mut brute: Vec<String> = all
            .into_iter()
            .filter(|s| is_lower_set(d, s).unwrap())
            .map(|s| serde_json::to_string(&s).unwrap())
            .collect();
        brute.sort();
        assert_eq!(sorted_json(enumerate_lower_sets(d, n).unwrap()), brute, "d={d} n={n}");
    }
}

#[test]
fn count_matches_enumeration_length() {
    for d in 1..=5 {
        for n in 0..=7 {
            let listed = enumerate_lower_sets(d, n).unwrap().count() as u64;
            assert_eq!(count_dfs(d, n, DEFAULT_NODE_BUDGET).unwrap(), listed, "d={d} n={n}");
        }
    }
}

#[test]
fn every_enumerated_set_is_distinct_and_valid() {
    let sets: Vec<LowerSet> = enumerate_lower_sets(3, 7).unwrap().collect();
    let unique: BTreeSet<&LowerSet> = sets.iter().collect();
    assert_eq!(unique.len(), sets.len());
    for q in &sets {
        assert_eq!(q.len(), 7);
        assert!(is_lower_set(3, q.points()).unwrap());
        assert!(q.contains(&Point::origin(3)));
    }
}

#[test]
fn dfs_agrees_with_generating_functions() {
    let p2 = partition_oracle_2d(30);
    for (n, expected) in p2.iter().enumerate() {
        assert_eq!(&count_dfs(2, n, DEFAULT_NODE_BUDGET).unwrap(), expected, "n={n}");
    }
    let p3 = plane_partition_oracle_3d(14);
    for (n, expected) in p3.iter().enumerate() {
        assert_eq!(&count_dfs(3, n, DEFAULT_NODE_BUDGET).unwrap(), expected, "n={n}");
    }
}

#[test]
fn closed_form_small_sizes() {
    for d in 1..=8u64 {
        let c = |n| count_lower_sets(d as usize, n, CountMethod::Dfs, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(c(0), 1);
        assert_eq!(c(1), 1);
        assert_eq!(c(2), d);
        assert_eq!(c(3), d * (d + 1) / 2);
    }
    for n in 0..=12 {
        assert_eq!(count_dfs(1, n, DEFAULT_NODE_BUDGET).unwrap(), 1);
    }
}

#[test]
fn partition_bijection_round_trips() {
    for d in 2..=3 {
        for n in 0..=8 {
            let mut seen = BTreeSet::new();
            for q in enumerate_lower_sets(d, n).unwrap() {
                let p = to_partition(&q).unwrap();
                assert_eq!(p.total(), n as u64);
                assert_eq!(from_partition(&p), q);
                assert!(seen.insert(format!("{:?}", p.heights())), "two sets share a partition");
            }
        }
    }
}

#[test]
fn slices_are_lower_and_non_increasing() {
    for d in 2..=4 {
        for n in 1..=7 {
            for q in enumerate_lower_sets(d, n).unwrap() {
                let dec = slice_decompose(&q).unwrap();
                assert_eq!(dec.sizes.iter().sum::<usize>(), n);
                assert!(dec.sizes.windows(2).all(|w| w[0] >= w[1]), "{:?}", dec.sizes);
                for s in &dec.slices {
                    assert!(is_lower_set(d - 1, s.set.points()).unwrap());
                    assert_eq!(s.set.dim(), d - 1);
                }
            }
        }
    }
}

#[test]
fn removing_any_corner_subset_keeps_lower() {
    for d in 1..=3 {
        for n in 1..=7 {
            for q in enumerate_lower_sets(d, n).unwrap() {
                let corners = q.corners().unwrap();
                for mask in 0u32..1 << corners.len() {
                    let drop: Vec<Point> =
                        corners.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone()).collect();
                    let rest: Vec<Point> = q.iter().filter(|p| !drop.contains(p)).cloned().collect();
                    assert!(is_lower_set(d, &rest).unwrap());
                }
            }
        }
    }
}

fn exact(d: usize, n: usize) -> BigCount {
    count_lower_sets(d, n, CountMethod::Dfs, DEFAULT_NODE_BUDGET).unwrap()
}

#[test]
fn sandwich_strict_from_three() {
    for d in 2..=5u64 {
        for n in 1..=9u64 {
            let r = verify_sandwich(d, n, &exact(d as usize, n as usize));
            let expected = if n <= 2 { FlagStatus::Boundary } else { FlagStatus::Pass };
            assert_eq!(r.flag("thm1"), Some(expected), "d={d} n={n}");
            assert!(r.all_pass(), "d={d} n={n} {:?}", r.flags);
        }
    }
}

#[test]
fn growth_ratio_within_constants() {
    for d in 2..=5u64 {
        for n in 2..=9u64 {
            let ln_p = exact(d as usize, n as usize).ln();
            let c = theorem2_constants(d, n);
            let ratio = ln_p / growth_scale(d, n);
            assert!(c.c_prime <= ratio + LOG_TOLERANCE && ratio <= c.c_upper + LOG_TOLERANCE);
            // the uniform gamma_d bound is the same statement in logs
            assert!(ln_p <= gamma_ln(d).0 * growth_scale(d, n) + LOG_TOLERANCE);
        }
    }
}

#[test]
fn staircase_lower_bound_holds() {
    for d in 2..=4u64 {
        for n in 2..=9u64 {
            let p = exact(d as usize, n as usize);
            let a_m = staircase_numbers(d, choose_m(d, n)).a_m.to_u64().unwrap();
            assert!(BigUint::from(d) << a_m <= p.value() * 2u32, "d={d} n={n}");
        }
    }
}

#[test]
fn binomials_match_pascal_triangle() {
    let mut pascal = vec![vec![BigUint::from(1u32)]];
    for row in 1..=60usize {
        let prev = &pascal[row - 1];
        let mut next = vec![BigUint::from(1u32); row + 1];
        for k in 1..row {
            next[k] = &prev[k - 1] + &prev[k];
        }
        pascal.push(next);
    }
    for d in 1..=10u64 {
        for m in 0..=50u64 {
            let s = staircase_numbers(d, m);
            assert_eq!(s.a_m.value(), &pascal[(m + d - 1) as usize][(d - 1) as usize]);
            assert_eq!(s.b_m.value(), &pascal[(m + d) as usize][d as usize]);
            assert_eq!(s.b_m.value() * d, s.a_m.value() * (m + d));
        }
    }
}

#[test]
fn staircase_family_sizes() {
    for (d, n) in [(2usize, 8usize), (2, 5), (3, 5), (3, 11), (2, 12), (4, 7)] {
        let m = choose_m(d as u64, n as u64);
        let a_m = staircase_numbers(d as u64, m).a_m.to_u64().unwrap();
        for axis in 0..d {
            let fam = staircase_family(d, n, axis).unwrap();
            let distinct: BTreeSet<&LowerSet> = fam.iter().collect();
            assert_eq!(distinct.len() as u64, 1 << (a_m - 1), "d={d} n={n}");
            assert!(fam.iter().all(|q| q.len() == n && is_lower_set(d, q.points()).unwrap()));
        }
    }
}

#[test]
fn rho_is_decreasing_and_beaten_from_eight() {
    for d in 2..20 {
        assert!(rho_d(d) > rho_d(d + 1), "d={d}");
    }
    assert!(rho_d(20) < rho_d(8) && rho_d(8) < rho_d(4));
    assert!(rho_d(20) > 1.0);
    assert!(lambda_d(7) * LN_2 < rho_d(7));
    for d in 8..=50 {
        assert!(lambda_d(d as u64) * LN_2 > rho_d(d), "d={d}");
    }
}

#[test]
fn positive_lower_sets_fit_in_hyperbolic_cross() {
    for d in 1..=3 {
        for n in 1..=8 {
            for q in enumerate_lower_sets(d, n).unwrap() {
                assert!(q.to_positive().iter().all(|k| in_hyperbolic_cross(k, n as u64)));
            }
        }
    }
}

#[test]
fn hyperbolic_cross_monotone() {
    for d in 1..=5 {
        for n in 1..=100u64 {
            assert!(hyperbolic_cross_size(d, n) <= hyperbolic_cross_size(d, n + 1));
            assert!(hyperbolic_cross_size(d, n) <= hyperbolic_cross_size(d + 1, n));
        }
    }
}

#[test]
fn grids_certify_exactly() {
    for d in 1..=2 {
        for n in 1..=5 {
            let xs = tensor_grid(d, &vec![n; d]).unwrap();
            let r = universal_constants(d, n, &xs, DEFAULT_NODE_BUDGET).unwrap();
            assert!((r.c1 - 1.0).abs() < 1e-10 && (r.c2 - 1.0).abs() < 1e-10, "d={d} n={n}");
        }
    }
    // a larger grid than needed is still exact
    let xs = tensor_grid(3, &[4, 4, 4]).unwrap();
    let r = universal_constants(3, 4, &xs, DEFAULT_NODE_BUDGET).unwrap();
    assert!((r.c1 - 1.0).abs() < 1e-10 && (r.c2 - 1.0).abs() < 1e-10);
}

#[test]
fn search_stays_within_scaling_budget() {
    for (d, n, seed) in [(1usize, 3usize, 2u64), (2, 3, 7), (2, 4, 11), (3, 3, 5)] {
        let p = count_dfs(d, n, DEFAULT_NODE_BUDGET).unwrap().to_u64().unwrap() as f64;
        let m_max = (8.0 * n as f64 * (n as f64 * p).ln()).ceil() as usize * 4;
        let cfg = SearchConfig { c1_target: 0.5, c2_target: 1.5, trials_per_m: 10, seed, m_max };
        let out = search_minimal_m(d, n, &cfg, DEFAULT_NODE_BUDGET).unwrap();
        assert!(out.m_found <= m_max && out.m_found >= n);
    }
}

#[test]
fn random_sixteen_points_anchor() {
    let xs = lowerset::discretization::sample_points(2, 16, 7);
    let r = universal_constants(2, 3, &xs, DEFAULT_NODE_BUDGET).unwrap();
    assert!((r.c1 - 0.594_204_428_066_874_8).abs() < 1e-12, "c1={}", r.c1);
    assert!((r.c2 - 1.566_146_533_052_443_8).abs() < 1e-12, "c2={}", r.c2);
}

#[test]
fn search_anchor_and_witness_replay() {
    let cfg = SearchConfig { c1_target: 0.5, c2_target: 1.5, trials_per_m: 20, seed: 7, m_max: 211 };
    let out = search_minimal_m(2, 3, &cfg, DEFAULT_NODE_BUDGET).unwrap();
    assert_eq!((out.m_found, out.trial), (10, 14));
    // twice the hyperbolic cross H_2^3
    assert_eq!(hyperbolic_cross_size(2, 3), 5u64);
    let again = universal_constants(2, 3, &out.witness, DEFAULT_NODE_BUDGET).unwrap();
    assert_eq!((again.c1, again.c2), (out.report.c1, out.report.c2));
    assert!((out.report.c1 - 0.626_281_789_664_417_5).abs() < 1e-12);
}
