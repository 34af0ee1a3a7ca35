//! Lattice points in `Z_+^d` and finite downward-closed sets of them.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A multi-index of non-negative coordinates. Ordering is lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<u32>);

impl Point {
    pub fn new(coords: Vec<u32>) -> Self {
        Point(coords)
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![0; dim])
    }

    /// `k * e_axis`.
    pub fn on_axis(dim: usize, axis: usize, k: u32) -> Self {
        let mut c = vec![0; dim];
        c[axis] = k;
        Point(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn step_up(&self, axis: usize) -> Point {
        let mut c = self.0.clone();
        c[axis] += 1;
        Point(c)
    }

    /// `self - e_axis`, or `None` on the boundary.
    pub fn step_down(&self, axis: usize) -> Option<Point> {
        let mut c = self.0.clone();
        c[axis] = c[axis].checked_sub(1)?;
        Some(Point(c))
    }

    /// Immediate predecessors `self - e_i` for every axis with a positive coordinate.
    pub fn predecessors(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.dim()).filter_map(move |i| self.step_down(i))
    }

    pub fn dominated_by(&self, other: &Point) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl From<Vec<u32>> for Point {
    fn from(v: Vec<u32>) -> Self {
        Point(v)
    }
}

impl<const N: usize> From<[u32; N]> for Point {
    fn from(v: [u32; N]) -> Self {
        Point(v.to_vec())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn check_dims<'a>(dim: usize, pts: impl IntoIterator<Item = &'a Point>) -> Result<()> {
    for p in pts {
        if p.dim() != dim {
            return Err(Error::InconsistentDimension { expected: dim, found: p.dim() });
        }
    }
    Ok(())
}

/// True iff `pts` is downward closed in `Z_+^dim`.
///
/// Checking immediate predecessors is enough: any dominated point is reached
/// by a chain of unit steps down.
pub fn is_lower_set(dim: usize, pts: &[Point]) -> Result<bool> {
    check_dims(dim, pts)?;
    let set: BTreeSet<&Point> = pts.iter().collect();
    Ok(pts.iter().all(|p| p.predecessors().all(|q| set.contains(&q))))
}

/// A finite lower set, stored as its lexicographically sorted point list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LowerSet {
    dim: usize,
    points: Vec<Point>,
}

impl LowerSet {
    /// Validates, sorts and deduplicates.
    pub fn new(dim: usize, mut points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        points.sort();
        points.dedup();
        if !is_lower_set(dim, &points)? {
            return Err(Error::NotLowerSet);
        }
        Ok(LowerSet { dim, points })
    }

    pub fn empty(dim: usize) -> Self {
        LowerSet { dim, points: Vec::new() }
    }

    /// Caller guarantees `points` is sorted, duplicate free and downward closed.
    pub(crate) fn from_sorted_unchecked(dim: usize, points: Vec<Point>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(is_lower_set(dim, &points).unwrap_or(false));
        LowerSet { dim, points }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    /// Points outside the set whose addition keeps it a lower set.
    pub fn addable_points(&self) -> Vec<Point> {
        if self.points.is_empty() {
            return vec![Point::origin(self.dim)];
        }
        let mut out: Vec<Point> = self
            .points
            .iter()
            .flat_map(|q| (0..self.dim).map(move |i| q.step_up(i)))
            .filter(|p| !self.contains(p) && p.predecessors().all(|q| self.contains(&q)))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Maximal elements, i.e. points whose removal leaves a lower set.
    pub fn corners(&self) -> Result<Vec<Point>> {
        if self.points.is_empty() {
            return Err(Error::EmptyCorners);
        }
        Ok(self
            .points
            .iter()
            .filter(|p| (0..self.dim).all(|i| !self.contains(&p.step_up(i))))
            .cloned()
            .collect())
    }

    /// Removes the given points, which must all be corners.
    pub fn without_corners(&self, remove: &[Point]) -> Result<LowerSet> {
        let points: Vec<Point> = self.points.iter().filter(|p| !remove.contains(p)).cloned().collect();
        LowerSet::new(self.dim, points)
    }

    /// The same set shifted by the all-ones vector into `N^d`.
    pub fn to_positive(&self) -> Vec<Point> {
        self.points
            .iter()
            .map(|p| Point(p.0.iter().map(|c| c + 1).collect()))
            .collect()
    }

    /// One-line JSON array of coordinate arrays, e.g. `[[0,0],[0,1],[1,0]]`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.points).expect("points serialize")
    }

    pub fn from_json(dim: usize, line: &str) -> Result<Self> {
        let points: Vec<Point> = serde_json::from_str(line)
            .map_err(|e| Error::InvalidArgument(format!("bad lower set JSON: {e}")))?;
        LowerSet::new(dim, points)
    }
}

impl Serialize for LowerSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.points.serialize(s)
    }
}

impl<'a> IntoIterator for &'a LowerSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

impl fmt::Display for LowerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}
