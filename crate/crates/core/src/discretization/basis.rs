use std::f64::consts::TAU;

use nalgebra::Complex;

use crate::lattice::{LowerSet, Point};

/// Phase `<k, x>` reduced to `[-1/2, 1/2]` before scaling by `2 pi`, so large
/// frequencies do not lose precision in the trigonometric call.
pub(crate) fn reduced_phase(freq: impl Iterator<Item = i64>, x: &[f64]) -> f64 {
    let t: f64 = freq.zip(x).map(|(k, &xi)| k as f64 * xi).sum();
    t - t.round()
}

/// `exp(2 pi i <k, x>)`, the product of one-dimensional exponentials.
pub fn basis_value(k: &Point, x: &[f64]) -> Complex<f64> {
    assert_eq!(k.dim(), x.len(), "frequency and point dimensions differ");
    let t = reduced_phase(k.coords().iter().map(|&c| c as i64), x);
    Complex::from_polar(1.0, TAU * t)
}

/// `sum_{k in Q} |u_k(x)|^2` at one point.
pub fn condition_e_sum(q: &LowerSet, x: &[f64]) -> f64 {
    q.iter().map(|k| basis_value(k, x).norm_sqr()).sum()
}

/// `sup_x sum_{k in Q} |u_k(x)|^2`. Every exponential has modulus one, so the
/// supremum is `|Q|` and the Condition E constant is `B = 1`.
pub fn condition_e_bound(q: &LowerSet) -> f64 {
    q.len() as f64
}
