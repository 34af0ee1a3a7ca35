//! Canonical enumeration and exact counting of lower sets.
//!
//! A lower set is grown one point at a time, each new point being addable and
//! lexicographically greater than the previous one. Every prefix of the
//! lex-sorted listing of a lower set is itself a lower set (predecessors are
//! lex-smaller), so each set of size `n` corresponds to exactly one growth
//! sequence and no deduplication is needed.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::lattice::{LowerSet, Point};
use crate::oracles;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Prefix count at which the counting tree is split into parallel subtrees.
const PARALLEL_FRONTIER: usize = 256;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    Dfs,
    #[default]
    Auto,
}

impl std::str::FromStr for CountMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dfs" => Ok(CountMethod::Dfs),
            "auto" => Ok(CountMethod::Auto),
            other => Err(Error::InvalidArgument(format!("unknown method '{other}'"))),
        }
    }
}

/// Addable points of the lower set `points` (lex sorted) that are strictly
/// greater than its last point.
fn growth_candidates(dim: usize, points: &[Point]) -> Vec<Point> {
    let Some(last) = points.last() else {
        return vec![Point::origin(dim)];
    };
    let contains = |p: &Point| points.binary_search(p).is_ok();
    // anything > last is automatically outside the set
    let mut out: Vec<Point> = points
        .iter()
        .flat_map(|q| (0..dim).map(move |i| q.step_up(i)))
        .filter(|p| p > last && p.predecessors().all(|q| contains(&q)))
        .collect();
    out.sort();
    out.dedup();
    out
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    Ok(())
}

struct Frame {
    candidates: Vec<Point>,
    next: usize,
}

/// Streams every lower set of a fixed size exactly once, in canonical order.
pub struct LowerSets {
    dim: usize,
    size: usize,
    points: Vec<Point>,
    stack: Vec<Frame>,
    empty_pending: bool,
}

impl Iterator for LowerSets {
    type Item = LowerSet;

    fn next(&mut self) -> Option<LowerSet> {
        if self.empty_pending {
            self.empty_pending = false;
            return Some(LowerSet::empty(self.dim));
        }
        while let Some(frame) = self.stack.last_mut() {
            if frame.next == frame.candidates.len() {
                self.stack.pop();
                self.points.pop();
                continue;
            }
            let p = frame.candidates[frame.next].clone();
            frame.next += 1;
            self.points.push(p);
            if self.points.len() == self.size {
                let out = LowerSet::from_sorted_unchecked(self.dim, self.points.clone());
                self.points.pop();
                return Some(out);
            }
            let candidates = growth_candidates(self.dim, &self.points);
            self.stack.push(Frame { candidates, next: 0 });
        }
        None
    }
}

/// All lower sets of `size` points in `Z_+^dim`. `size == 0` yields only the empty set.
pub fn enumerate_lower_sets(dim: usize, size: usize) -> Result<LowerSets> {
    check_dim(dim)?;
    let stack = if size == 0 {
        Vec::new()
    } else {
        vec![Frame { candidates: vec![Point::origin(dim)], next: 0 }]
    };
    Ok(LowerSets { dim, size, points: Vec::new(), stack, empty_pending: size == 0 })
}

struct Budget<'a> {
    used: &'a AtomicU64,
    limit: u64,
}

impl Budget<'_> {
    fn charge(&self, nodes: u64) -> Result<()> {
        let before = self.used.fetch_add(nodes, Ordering::Relaxed);
        if before + nodes > self.limit {
            Err(Error::BudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

fn count_subtree(dim: usize, size: usize, points: &mut Vec<Point>, budget: &Budget) -> Result<u64> {
    let candidates = growth_candidates(dim, points);
    budget.charge(candidates.len() as u64)?;
    if points.len() + 1 == size {
        return Ok(candidates.len() as u64);
    }
    let mut total = 0u64;
    for p in candidates {
        points.push(p);
        let sub = count_subtree(dim, size, points, budget);
        points.pop();
        total += sub?;
    }
    Ok(total)
}

/// Counts lower sets by walking the canonical growth tree without storing the sets.
///
/// Subtrees below a breadth-first frontier are counted in parallel; the node
/// budget is shared, so the outcome does not depend on scheduling.
pub fn count_dfs(dim: usize, size: usize, node_budget: u64) -> Result<BigCount> {
    check_dim(dim)?;
    if size == 0 {
        return Ok(BigCount::one());
    }
    let used = AtomicU64::new(0);
    let budget = Budget { used: &used, limit: node_budget };

    let mut frontier: Vec<Vec<Point>> = vec![Vec::new()];
    let mut depth = 0;
    while depth < size && frontier.len() < PARALLEL_FRONTIER {
        let mut next = Vec::new();
        for prefix in &frontier {
            let candidates = growth_candidates(dim, prefix);
            budget.charge(candidates.len() as u64)?;
            for p in candidates {
                let mut child = prefix.clone();
                child.push(p);
                next.push(child);
            }
        }
        frontier = next;
        depth += 1;
    }
    if depth == size {
        return Ok(BigCount::from(frontier.len() as u64));
    }

    let counts: Vec<u64> = frontier
        .into_par_iter()
        .map(|mut prefix| count_subtree(dim, size, &mut prefix, &budget))
        .collect::<Result<_>>()?;
    Ok(counts.into_iter().map(BigCount::from).sum())
}

/// `p_dim(size)`, the number of lower sets of `size` points in `Z_+^dim`.
///
/// `Auto` answers `dim <= 3` from closed forms and generating-function tables,
/// which agree with `Dfs` everywhere both are defined.
pub fn count_lower_sets(dim: usize, size: usize, method: CountMethod, node_budget: u64) -> Result<BigCount> {
    check_dim(dim)?;
    match (method, dim) {
        (CountMethod::Auto, 1) => Ok(BigCount::one()),
        (CountMethod::Auto, 2) => Ok(oracles::partition_oracle_2d(size).swap_remove(size)),
        (CountMethod::Auto, 3) => Ok(oracles::plane_partition_oracle_3d(size).swap_remove(size)),
        _ => count_dfs(dim, size, node_budget),
    }
}
