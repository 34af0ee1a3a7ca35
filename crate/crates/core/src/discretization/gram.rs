use std::f64::consts::TAU;

use nalgebra::{Complex, DMatrix, SymmetricEigen};
use serde::Serialize;

use super::basis::reduced_phase;
use super::points::PointSetTorus;
use crate::error::{Error, Result};
use crate::lattice::LowerSet;

/// Extreme eigenvalues of the sampling Gram matrix of one subspace. They are
/// the tight constants in `c1 |f|^2 <= (1/m) sum |f(x_i)|^2 <= c2 |f|^2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GramSpectrum {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub set: LowerSet,
}

/// Neumaier-compensated running sum.
#[derive(Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.carry
    }
}

/// `G = (1/m) V* V` with `V_{ik} = exp(2 pi i <k, x_i>)`, so
/// `G_{kl} = (1/m) sum_i exp(2 pi i <l - k, x_i>)`.
pub fn gram_matrix(q: &LowerSet, xs: &PointSetTorus) -> Result<DMatrix<Complex<f64>>> {
    if q.dim() != xs.dim() {
        return Err(Error::InconsistentDimension { expected: q.dim(), found: xs.dim() });
    }
    let n = q.len();
    let m = xs.len() as f64;
    let freqs: Vec<Vec<i64>> = q.iter().map(|k| k.coords().iter().map(|&c| c as i64).collect()).collect();
    let mut g = DMatrix::from_element(n, n, Complex::new(0.0, 0.0));
    for a in 0..n {
        g[(a, a)] = Complex::new(1.0, 0.0);
        for b in a + 1..n {
            let diff: Vec<i64> = freqs[b].iter().zip(&freqs[a]).map(|(l, k)| l - k).collect();
            let (mut re, mut im) = (CompensatedSum::default(), CompensatedSum::default());
            for x in xs.points() {
                let t = TAU * reduced_phase(diff.iter().copied(), x);
                re.add(t.cos());
                im.add(t.sin());
            }
            let v = Complex::new(re.value() / m, im.value() / m);
            g[(a, b)] = v;
            g[(b, a)] = v.conj();
        }
    }
    Ok(g)
}

pub fn gram_spectrum(q: &LowerSet, xs: &PointSetTorus) -> Result<GramSpectrum> {
    if q.is_empty() {
        return Err(Error::InvalidArgument("the empty lower set spans no subspace".into()));
    }
    let g = gram_matrix(q, xs)?;
    let (lambda_min, lambda_max) = extreme_eigenvalues(g)?;
    Ok(GramSpectrum { lambda_min, lambda_max, set: q.clone() })
}

/// Smallest and largest eigenvalue of a Hermitian positive-semidefinite matrix.
/// Round-off below zero is clamped, since the matrix is a Gram matrix.
pub fn extreme_eigenvalues(g: DMatrix<Complex<f64>>) -> Result<(f64, f64)> {
    let dim = g.nrows();
    let frobenius = g.norm();
    let diag: Vec<f64> = g.diagonal().iter().map(|z| z.re).collect();
    let eig = SymmetricEigen::try_new(g, f64::EPSILON, 10_000).ok_or_else(|| Error::EigenFailure {
        dim,
        frobenius,
        diag_min: diag.iter().copied().fold(f64::INFINITY, f64::min),
        diag_max: diag.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    })?;
    let lo = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok((lo.max(0.0), hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discretization::points::{sample_points, tensor_grid};
    use crate::enumerate::enumerate_lower_sets;
    use crate::lattice::Point;
    use nalgebra::DVector;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn set(dim: usize, pts: &[&[u32]]) -> LowerSet {
        LowerSet::new(dim, pts.iter().map(|c| Point::new(c.to_vec())).collect()).unwrap()
    }

    #[test]
    fn two_point_grid_is_identity() {
        let xs = PointSetTorus::new(1, vec![vec![0.0], vec![0.5]]).unwrap();
        let g = gram_matrix(&set(1, &[&[0], &[1]]), &xs).unwrap();
        assert!((g.clone() - DMatrix::identity(2, 2)).norm() < 1e-15, "{g}");
        let s = gram_spectrum(&set(1, &[&[0], &[1]]), &xs).unwrap();
        assert!((s.lambda_min - 1.0).abs() < 1e-12 && (s.lambda_max - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_point_is_rank_one() {
        let xs = sample_points(2, 1, 3);
        for q in enumerate_lower_sets(2, 4).unwrap() {
            let s = gram_spectrum(&q, &xs).unwrap();
            assert!(s.lambda_min.abs() < 1e-12);
            assert!((s.lambda_max - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn grid_exactness() {
        // every lower set of size 4 in d = 2 fits in the 4 x 4 box
        let xs = tensor_grid(2, &[4, 4]).unwrap();
        for q in enumerate_lower_sets(2, 4).unwrap() {
            let s = gram_spectrum(&q, &xs).unwrap();
            assert!((s.lambda_min - 1.0).abs() < 1e-10);
            assert!((s.lambda_max - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn rayleigh_quotients_lie_in_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let q = set(2, &[&[0, 0], &[0, 1], &[1, 0], &[1, 1], &[2, 0]]);
        let xs = sample_points(2, 12, 8);
        let g = gram_matrix(&q, &xs).unwrap();
        let s = gram_spectrum(&q, &xs).unwrap();
        for _ in 0..1000 {
            let f = DVector::from_fn(5, |_, _| Complex::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
            let num = (f.adjoint() * &g * &f)[(0, 0)].re;
            let den = f.norm_squared();
            let rq = num / den;
            assert!(rq >= s.lambda_min - 1e-12 && rq <= s.lambda_max + 1e-12);
            // the quadratic form is the sampled mean of |f|^2
            let sampled: f64 = xs
                .points()
                .iter()
                .map(|x| {
                    q.iter()
                        .zip(f.iter())
                        .map(|(k, c)| c * crate::discretization::basis_value(k, x))
                        .sum::<Complex<f64>>()
                        .norm_sqr()
                })
                .sum::<f64>()
                / xs.len() as f64;
            assert!((sampled - num).abs() < 1e-12 * (1.0 + num));
        }
    }

    #[test]
    fn complex_solver_matches_real_embedding() {
        // [[Re, -Im], [Im, Re]] has the spectrum of G with every eigenvalue doubled
        let q = set(2, &[&[0, 0], &[0, 1], &[0, 2], &[1, 0]]);
        let xs = sample_points(2, 9, 21);
        let g = gram_matrix(&q, &xs).unwrap();
        let n = g.nrows();
        let real = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
            let z = g[(i % n, j % n)];
            match (i < n, j < n) {
                (true, true) | (false, false) => z.re,
                (true, false) => -z.im,
                (false, true) => z.im,
            }
        });
        let ev = real.symmetric_eigenvalues();
        let lo = ev.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = ev.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let (clo, chi) = extreme_eigenvalues(g).unwrap();
        assert!((lo.max(0.0) - clo).abs() < 1e-12);
        assert!((hi - chi).abs() < 1e-12);
        assert!(clo <= 1.0 && 1.0 <= chi);
    }

    #[test]
    fn dimension_mismatch() {
        let xs = sample_points(3, 4, 0);
        assert!(gram_spectrum(&set(2, &[&[0, 0]]), &xs).is_err());
    }
}
