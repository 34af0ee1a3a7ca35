//! `d`-dimensional integer partitions as height functions on `N^{d-1}`.
//!
//! A lower set `Q` in `Z_+^d` is shifted by the all-ones vector into `N^d`,
//! then each column over a base point `k` in `N^{d-1}` is recorded by its
//! height `n_k`, the number of points stacked along the last axis.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::{LowerSet, Point};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    dim: usize,
    heights: BTreeMap<Point, u32>,
}

impl Partition {
    /// Validates that every base has positive coordinates, every height is
    /// positive, and heights are non-increasing away from the origin.
    pub fn new(dim: usize, heights: BTreeMap<Point, u32>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidArgument("partitions need dimension at least 2".into()));
        }
        for (base, &h) in &heights {
            if base.dim() != dim - 1 {
                return Err(Error::InconsistentDimension { expected: dim - 1, found: base.dim() });
            }
            if base.coords().iter().any(|&c| c == 0) {
                return Err(Error::NotAPartition(format!("base {base} is not in N^{}", dim - 1)));
            }
            if h == 0 {
                return Err(Error::NotAPartition(format!("zero height at {base}")));
            }
            for axis in 0..dim - 1 {
                if base.coords()[axis] == 1 {
                    continue;
                }
                let below = base.step_down(axis).expect("coordinate >= 2");
                match heights.get(&below) {
                    Some(&hb) if hb >= h => {}
                    _ => {
                        return Err(Error::NotAPartition(format!(
                            "height at {base} exceeds height at {below}"
                        )))
                    }
                }
            }
        }
        Ok(Partition { dim, heights })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn heights(&self) -> &BTreeMap<Point, u32> {
        &self.heights
    }

    /// The partitioned integer.
    pub fn total(&self) -> u64 {
        self.heights.values().map(|&h| h as u64).sum()
    }
}

pub fn to_partition(q: &LowerSet) -> Result<Partition> {
    let dim = q.dim();
    if dim < 2 {
        return Err(Error::InvalidArgument("partitions need dimension at least 2".into()));
    }
    let mut heights: BTreeMap<Point, u32> = BTreeMap::new();
    for p in q {
        let base: Vec<u32> = p.coords()[..dim - 1].iter().map(|c| c + 1).collect();
        *heights.entry(Point::new(base)).or_default() += 1;
    }
    Ok(Partition { dim, heights })
}

pub fn from_partition(p: &Partition) -> LowerSet {
    let dim = p.dim;
    let mut points = Vec::with_capacity(p.total() as usize);
    for (base, &h) in &p.heights {
        for level in 0..h {
            let mut c: Vec<u32> = base.coords().iter().map(|k| k - 1).collect();
            c.push(level);
            points.push(Point::new(c));
        }
    }
    points.sort();
    LowerSet::from_sorted_unchecked(dim, points)
}
