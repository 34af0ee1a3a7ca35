use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Points on the torus `[0, 1)^d`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointSetTorus {
    dim: usize,
    points: Vec<Vec<f64>>,
    /// Seed the points were drawn from, if random.
    seed: Option<u64>,
}

impl PointSetTorus {
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("point set must be non-empty".into()));
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::InconsistentDimension { expected: dim, found: p.len() });
            }
            if p.iter().any(|&c| !(0.0..1.0).contains(&c)) {
                return Err(Error::InvalidArgument(format!("coordinate outside [0, 1) in {p:?}")));
            }
        }
        Ok(PointSetTorus { dim, points, seed: None })
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

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// One point per line, coordinates comma separated, printed with the
    /// shortest representation that round-trips exactly.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            let row: Vec<String> = p.iter().map(|c| c.to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(dim: usize, text: &str) -> Result<Self> {
        let points = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split(',')
                    .map(|c| c.trim().parse::<f64>().map_err(|e| Error::InvalidArgument(format!("bad coordinate '{c}': {e}"))))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PointSetTorus::new(dim, points)
    }
}

/// `m` i.i.d. uniform points from a ChaCha8 stream seeded with `seed`.
/// A smaller `m` with the same seed gives a prefix of a larger one.
pub fn sample_points(dim: usize, m: usize, seed: u64) -> PointSetTorus {
    assert!(dim >= 1 && m >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..m).map(|_| (0..dim).map(|_| rng.random::<f64>()).collect()).collect();
    PointSetTorus { dim, points, seed: Some(seed) }
}

/// The product grid `{j / s_i : 0 <= j < s_i}`, first axis varying slowest.
pub fn tensor_grid(dim: usize, per_axis: &[usize]) -> Result<PointSetTorus> {
    if per_axis.len() != dim {
        return Err(Error::InconsistentDimension { expected: dim, found: per_axis.len() });
    }
    if dim == 0 || per_axis.contains(&0) {
        return Err(Error::InvalidArgument("grid sizes must be positive".into()));
    }
    let mut points: Vec<Vec<f64>> = vec![Vec::new()];
    for &s in per_axis {
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..s).map(move |j| {
                    let mut q = p.clone();
                    q.push(j as f64 / s as f64);
                    q
                })
            })
            .collect();
    }
    Ok(PointSetTorus { dim, points, seed: None })
}
