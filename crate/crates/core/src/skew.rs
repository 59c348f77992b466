//! Wigner–Yanase skew information `I_X(ρ) = −½ Tr([X, √ρ]²)` and its total
//! over the basic local observables.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::basis::{lifted_basis, ObservableId};
use crate::concurrence::{concurrence_from_variance, variance_bounds};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::scalar::{to_f64, Real};
use crate::state::{trace_of_product, DensityMatrix};

/// Hermitian PSD square root of `rho`. Eigenvalues below the clip tolerance
/// are set to zero; anything below `−state_tol` is rejected.
pub fn psd_sqrt<T: Real>(rho: &DensityMatrix<T>) -> Result<CMatrix<T>> {
    matrix_sqrt(rho.entries())
}

pub(crate) fn matrix_sqrt<T: Real>(m: &CMatrix<T>) -> Result<CMatrix<T>> {
    let (vals, vecs) = linalg::eigh(m);
    if let Some(&min) = vals.last() {
        if min < -T::state_tol() {
            return Err(Error::NotPsd {
                min_eigenvalue: to_f64(min),
            });
        }
    }
    let roots = vals.iter().map(|&v| {
        let r = if v < T::clip_tol() {
            T::zero()
        } else {
            v.sqrt()
        };
        Complex::new(r, T::zero())
    });
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(vals.len(), roots));
    Ok(&vecs * d * vecs.adjoint())
}

/// `−½ Re Tr([X, S]²)` for a precomputed `S = √ρ`, without clamping.
pub fn commutator_skew<T: Real>(sqrt_rho: &CMatrix<T>, x: &CMatrix<T>) -> Result<T> {
    if sqrt_rho.shape() != x.shape() {
        return Err(Error::DimensionMismatch {
            expected: sqrt_rho.nrows(),
            found: x.nrows(),
        });
    }
    let k = x * sqrt_rho - sqrt_rho * x;
    Ok(-trace_of_product(&k, &k) * nalgebra::convert::<f64, T>(0.5))
}

/// Skew information of `rho` with respect to the composite-space observable
/// `x`, clamped at zero.
pub fn skew_information<T: Real>(rho: &DensityMatrix<T>, x: &CMatrix<T>) -> Result<T> {
    let s = psd_sqrt(rho)?;
    Ok(commutator_skew(&s, x)?.max(T::zero()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkewReport<T: Real> {
    pub per_observable: Vec<(ObservableId, T)>,
    pub total: T,
    /// `sqrt(clamp((I − v_min)/(v_max − v_min)))` with the pure-state bounds.
    /// An upper-estimate heuristic, not a certified mixed-state concurrence.
    pub heuristic_bound: T,
    pub heuristic: bool,
}

/// Sums the skew information over every party's lifted basis.
pub fn total_skew_information<T: Real>(rho: &DensityMatrix<T>) -> Result<SkewReport<T>> {
    let s = psd_sqrt(rho)?;
    let layout = rho.layout();
    let mut per_observable = Vec::new();
    let mut total = T::zero();
    for (id, x) in lifted_basis::<T>(layout)? {
        let v = commutator_skew(&s, &x)?.max(T::zero());
        total += v;
        per_observable.push((id, v));
    }
    let heuristic_bound = if layout.parties() >= 2 {
        let (v_min, v_max) = variance_bounds::<T>(layout);
        concurrence_from_variance(total, v_min, v_max)
    } else {
        T::zero()
    };
    Ok(SkewReport {
        per_observable,
        total,
        heuristic_bound,
        heuristic: true,
    })
}
