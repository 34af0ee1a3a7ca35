//! Greedy decomposition of a lower set into coordinate-hyperplane slices.
//!
//! At each step the hyperplane `{x_axis = level}` holding the most remaining
//! points is removed. Ties go to the lowest axis, then the lowest level. The
//! remaining set is always `Q` intersected with an orthant `x >= offset`, so
//! every slice, shifted by that offset and with the cut axis dropped, is a
//! lower set one dimension down.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::{LowerSet, Point};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub axis: usize,
    pub level: u32,
    /// The slice re-indexed in the remaining `d - 1` coordinates.
    pub set: LowerSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceDecomposition {
    pub sizes: Vec<usize>,
    pub slices: Vec<Slice>,
}

pub fn slice_decompose(q: &LowerSet) -> Result<SliceDecomposition> {
    let dim = q.dim();
    if dim < 2 {
        return Err(Error::InvalidArgument("slicing needs dimension at least 2".into()));
    }
    if q.is_empty() {
        return Err(Error::InvalidArgument("cannot slice the empty set".into()));
    }
    let mut remaining: Vec<Point> = q.points().to_vec();
    let mut offset = vec![0u32; dim];
    let mut sizes = Vec::new();
    let mut slices = Vec::new();

    while !remaining.is_empty() {
        // (count, axis, level) with count maximal, then axis and level minimal
        let mut best: Option<(usize, usize, u32)> = None;
        for axis in 0..dim {
            let mut per_level: BTreeMap<u32, usize> = BTreeMap::new();
            for p in &remaining {
                *per_level.entry(p.coords()[axis]).or_default() += 1;
            }
            for (&level, &count) in &per_level {
                if best.is_none_or(|(c, _, _)| count > c) {
                    best = Some((count, axis, level));
                }
            }
        }
        let (count, axis, level) = best.expect("remaining is non-empty");
        debug_assert_eq!(level, offset[axis]);

        let (cut, rest): (Vec<Point>, Vec<Point>) =
            remaining.into_iter().partition(|p| p.coords()[axis] == level);
        remaining = rest;

        let mut projected: Vec<Point> = cut
            .iter()
            .map(|p| {
                let c = p
                    .coords()
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != axis)
                    .map(|(i, &c)| c - offset[i])
                    .collect();
                Point::new(c)
            })
            .collect();
        projected.sort();
        let set = LowerSet::new(dim - 1, projected)?;

        offset[axis] += 1;
        sizes.push(count);
        slices.push(Slice { axis, level, set });
    }
    Ok(SliceDecomposition { sizes, slices })
}
