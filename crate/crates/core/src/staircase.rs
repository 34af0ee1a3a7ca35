//! Simplices `B_m = {sum k_i <= m}`, their top layers `A_m = {sum k_i = m}`,
//! and the family of lower sets obtained by dropping top-layer corners and
//! padding along one axis. The family has `2^(a_m - 1)` members per axis, all
//! of size `n`, which is where the `(d/2) 2^(a_m)` lower bound comes from.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::lattice::{LowerSet, Point};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StaircaseNumbers {
    pub m: u64,
    /// `|A_m| = C(m+d-1, d-1)`.
    pub a_m: BigCount,
    /// `|B_m| = C(m+d, d)`.
    pub b_m: BigCount,
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // stays integral: acc = C(n - k + i + 1, i + 1) after each step
        acc = acc * (n - k + i + 1) / (i + 1);
    }
    acc
}

pub fn staircase_numbers(d: u64, m: u64) -> StaircaseNumbers {
    assert!(d >= 1);
    let a_m = binomial(m + d - 1, d - 1);
    let b_m = binomial(m + d, d);
    debug_assert_eq!(&b_m * d, &a_m * (m + d));
    StaircaseNumbers { m, a_m: a_m.into(), b_m: b_m.into() }
}

/// The unique `m >= 0` with `b_m < n <= b_{m+1}`.
pub fn choose_m(d: u64, n: u64) -> u64 {
    assert!(d >= 2 && n >= 2, "choose_m needs d >= 2, n >= 2");
    let n = BigUint::from(n);
    let mut m = 0;
    while staircase_numbers(d, m + 1).b_m.0 < n {
        m += 1;
    }
    m
}

/// `A_m` in lexicographic order.
pub fn corner_layer(dim: usize, m: u32) -> Vec<Point> {
    fn fill(rest: u32, prefix: &mut Vec<u32>, dim: usize, out: &mut Vec<Point>) {
        if prefix.len() + 1 == dim {
            prefix.push(rest);
            out.push(Point::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for c in 0..=rest {
            prefix.push(c);
            fill(rest - c, prefix, dim, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(m, &mut Vec::with_capacity(dim), dim, &mut out);
    out
}

/// `B_m` as a lower set.
pub fn staircase_set(dim: usize, m: u32) -> LowerSet {
    let mut points: Vec<Point> = (0..=m).flat_map(|s| corner_layer(dim, s)).collect();
    points.sort();
    LowerSet::from_sorted_unchecked(dim, points)
}

/// `B_m` minus the unselected corners of `A_m`, extended by points
/// `(m+1) e_axis, (m+2) e_axis, ...` until it has exactly `n` points,
/// where `m = choose_m(d, n)`. `axis` is zero-based.
pub fn build_staircase_family(d: usize, n: usize, selector: &[Point], axis: usize) -> Result<LowerSet> {
    if d < 2 || n < 2 {
        return Err(Error::InvalidArgument("staircase family needs d >= 2, n >= 2".into()));
    }
    if axis >= d {
        return Err(Error::InvalidArgument(format!("axis {axis} out of range for d = {d}")));
    }
    let m = choose_m(d as u64, n as u64) as u32;
    let layer = corner_layer(d, m);
    if let Some(bad) = selector.iter().find(|p| !layer.contains(p)) {
        return Err(Error::InvalidSelector(format!("{bad} is not a corner of B_{m}")));
    }
    let axis_corner = Point::on_axis(d, axis, m);
    if !selector.contains(&axis_corner) {
        return Err(Error::InvalidSelector(format!("selector must keep the axis corner {axis_corner}")));
    }

    let mut points: Vec<Point> = staircase_set(d, m)
        .iter()
        .filter(|p| p.degree() < m as u64 || selector.contains(p))
        .cloned()
        .collect();
    let base = points.len();
    assert!(base < n, "B_m has fewer than n points by the choice of m");
    points.extend((1..=(n - base) as u32).map(|k| Point::on_axis(d, axis, m + k)));
    points.sort();
    let out = LowerSet::from_sorted_unchecked(d, points);
    assert_eq!(out.len(), n);
    Ok(out)
}

/// Every member of the family on one axis, one per subset of the other corners.
pub fn staircase_family(d: usize, n: usize, axis: usize) -> Result<Vec<LowerSet>> {
    if d < 2 || n < 2 || axis >= d {
        return Err(Error::InvalidArgument("staircase family needs d >= 2, n >= 2, axis < d".into()));
    }
    let m = choose_m(d as u64, n as u64) as u32;
    let axis_corner = Point::on_axis(d, axis, m);
    let others: Vec<Point> = corner_layer(d, m).into_iter().filter(|p| *p != axis_corner).collect();
    if others.len() >= 32 {
        return Err(Error::InvalidArgument(format!("2^{} family members is too many to list", others.len())));
    }
    (0u32..1 << others.len())
        .map(|mask| {
            let mut selector = vec![axis_corner.clone()];
            selector.extend(others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone()));
            build_staircase_family(d, n, &selector, axis)
        })
        .collect()
}
