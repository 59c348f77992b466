#![allow(dead_code)]

use entangle::linalg::CMatrix;
use nalgebra::DMatrix;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub const BIPARTITE_LAYOUTS: [[usize; 2]; 5] = [[2, 2], [2, 3], [3, 3], [2, 4], [4, 4]];

/// Haar-ish orthogonal matrix: Q factor of a Gaussian matrix with the sign
/// of diag(R) folded in.
pub fn random_orthogonal(n: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0a7e);
    let g = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

pub fn random_unitary(n: usize, seed: u64) -> CMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0417_a7e5);
    let g = CMatrix::from_fn(n, n, |_, _| {
        Complex::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        )
    });
    g.qr().q()
}

pub fn max_abs(m: &CMatrix<f64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}
